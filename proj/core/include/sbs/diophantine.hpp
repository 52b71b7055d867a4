#pragma once

// Linear Diophantine relations  extra * beta + sum coeffs_i * b_i = target
// with each b_i a unit residue in (0, m_i).

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sbs/arith.hpp"

namespace sbs {

struct DiophantineSolution {
  int64_t beta = 0;
  std::vector<int64_t> b;

  bool operator==(const DiophantineSolution&) const = default;
};

struct Unsolvable {
  /// gcd(extra, coeffs); it fails to divide the target when the relation has
  /// no integer solution at all.
  int64_t witness_gcd = 0;
  std::string reason;
};

using DiophantineOutcome = std::variant<DiophantineSolution, Unsolvable>;

/// Finds beta and b_i with extra*beta + sum coeffs_i*b_i = target,
/// 0 < b_i < moduli_i and gcd(b_i, moduli_i) = 1.
///
/// Any integer solution is produced by iterated extended gcd and b_i is
/// reduced mod m_i, moving the difference into beta when extra divides
/// coeffs_i * m_i. If that leaves a non-unit b_i, an exact search over unit
/// residues decides the relation modulo |extra| prime power by prime power.
/// With extra = 0 the box of unit residues is enumerated with pruning.
///
/// Throws InputError unless target != 0, coeffs is non-empty and positive,
/// and every modulus is >= 2.
DiophantineOutcome solve_linear_combination(const std::vector<int64_t>& coeffs,
                                            const std::vector<int64_t>& moduli, int64_t extra,
                                            int64_t target);

/// extra*beta + sum coeffs_i*b_i, overflow-checked.
int64_t evaluate(const DiophantineSolution& s, const std::vector<int64_t>& coeffs, int64_t extra);

}  // namespace sbs
