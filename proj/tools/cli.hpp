#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sbs::cli {

/// Exit codes: 0 definitive answer, 2 Unknown, 1 input or verification error.
inline constexpr int kExitDefinitive = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnknown = 2;

/// Runs one command line. args[0] is the program name. The environment
/// variable SBS_OUT_DIR, when set, is the directory for certificate files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sbs::cli
