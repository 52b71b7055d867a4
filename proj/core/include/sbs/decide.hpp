#pragma once

// Decision procedures over H_2 data: Sasakian existence, semi-regular
// structures on rational homology spheres, negative Sasakian structures and
// the K-contact necessary condition.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbs/abelian.hpp"
#include "sbs/construct.hpp"
#include "sbs/seifert.hpp"

namespace sbs {

enum class VerdictStatus { ProvablyYes, ProvablyNo, Unknown };

std::string to_string(VerdictStatus s);

struct TraceEntry {
  std::string check;
  std::string outcome;  ///< "pass", "fail", "skip" or a short result
  std::string detail;

  bool operator==(const TraceEntry&) const = default;
};

/// ProvablyYes carries a verified certificate; ProvablyNo names the
/// obstruction in `finding`; Unknown names the first hypothesis that
/// blocked a construction in `finding`.
struct Verdict {
  VerdictStatus status = VerdictStatus::Unknown;
  std::optional<SeifertCertificate> certificate;
  std::string finding;
  std::string reason;
  std::vector<TraceEntry> trace;
};

/// Finding attached to the negative-Sasakian exceptions.
inline constexpr const char* kUnknownForNegative = "Unknown-for-negative";

/// Full pipeline: G-K gate, Barden read-off, regular bundles, rank-one
/// constructions with rank raising, Kollar's bound and the sphere
/// construction at rank 0. Only G-K, Barden and Kollar failures give
/// ProvablyNo; failed construction hypotheses give Unknown.
Verdict decide_sasakian(const H2Data& h);

/// Complete answer for semi-regular structures with b_2 = 0. Throws
/// InputError when h.rank != 0.
Verdict decide_semiregular_sphere(const H2Data& h);

/// Torsion of a positive Sasakian rational homology sphere: Z_m^2 (m >= 1),
/// Z_5^4, Z_4^4, Z_3^4, Z_3^6, Z_3^8 or Z_2^{2n}.
bool positive_table_member(std::span<const TorsionSummand> torsion);

/// Throws InputError when h.rank != 0.
Verdict decide_negative_sasakian(const H2Data& h);

struct KContactResult {
  bool pass = false;
  std::string clause;  ///< failing clause, empty on pass
  std::vector<SpherePart> parts;
  bool coprime_branch = false;  ///< gcd(m_i, d_i) = 1 for all i
  bool shifted_branch = false;  ///< gcd(m_i, d_i + 3) = 1 for all i
  std::string detail;
};

/// Necessary condition for a semi-regular K-contact structure on a spin
/// rational homology sphere. Throws InputError when h.rank != 0.
KContactResult kcontact_sphere_necessary(const H2Data& h);

/// Splits paired torsion into prime-power parts Z_{p^e}^{2g}, or nullopt
/// when some p has two exponents or some count is odd.
std::optional<std::vector<TorsionPart>> prime_power_parts(std::span<const TorsionSummand> torsion);

}  // namespace sbs
