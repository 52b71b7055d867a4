#pragma once

// Canonical line-oriented text format for certificates:
//
//   sbs-certificate 1
//   surface CP1xCP1
//   basis H1 H2
//   divisor 2 2 m 3 b 2 genus 1
//   bclass -1 0
//   assumption smooth-transverse-representatives
//   claim rank 1
//   claim torsion 3^2
//   claim spin true
//   end
//
// Field order is fixed and integers are exact; serialize(parse(s)) == s for
// every string serialize produced. Blank lines and lines starting with '#'
// are ignored when parsing.

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbs/abelian.hpp"
#include "sbs/seifert.hpp"

namespace sbs {

class ParseError : public InputError {
 public:
  ParseError(int line, int column, const std::string& message)
      : InputError(format(line, column, message)), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(int line, int column, const std::string& message);
  int line_;
  int column_;
};

std::string serialize(const SeifertCertificate& cert);
SeifertCertificate parse_certificate(const std::string& text);
SeifertCertificate read_certificate(std::istream& in);

/// Parses "3^2,5^4" (count defaults to 1 for a bare "7"); "0" or "" is the
/// trivial group. Blanks around items are skipped. Errors carry the 1-based
/// column.
std::vector<TorsionSummand> parse_torsion(const std::string& text);

}  // namespace sbs
