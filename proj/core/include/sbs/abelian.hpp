#pragma once

// Second-homology data of a simply connected 5-manifold, the Barden normal
// form, and the group-theoretic necessary conditions (G-K, Kollar, T*_p).

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sbs/arith.hpp"

namespace sbs {

/// A block Z_order^count of the torsion group.
struct TorsionSummand {
  int64_t order = 0;
  int64_t count = 0;

  bool operator==(const TorsionSummand&) const = default;
  auto operator<=>(const TorsionSummand&) const = default;
};

using BardenIndex = ExtendedIndex;

/// H_2(M, Z) = Z^rank + torsion, together with the Barden invariant i(M).
///
/// The torsion list is kept sorted by (order, count) with one entry per
/// order. Equality is group isomorphism plus equal rank and Barden index, so
/// Z_6^2 and Z_2^2 + Z_3^2 compare equal.
struct H2Data {
  int64_t rank = 0;
  std::vector<TorsionSummand> torsion;
  BardenIndex barden_i{0};

  bool torsion_free() const { return torsion.empty(); }
  bool operator==(const H2Data& other) const;
};

/// Prime -> (exponent -> c(p^exponent)).
using PrimaryDecomposition = std::map<int64_t, std::map<int, int64_t>>;

/// Canonical torsion list: merges equal orders and sorts.
/// Throws InputError for order < 2 or count < 1.
std::vector<TorsionSummand> normalize(std::span<const TorsionSummand> raw);

/// Builds normalized H2Data; throws InputError on negative rank or bad torsion.
H2Data make_h2(int64_t rank, std::span<const TorsionSummand> raw, BardenIndex barden_i);

PrimaryDecomposition primary_decomposition(std::span<const TorsionSummand> torsion);
inline PrimaryDecomposition primary_decomposition(const H2Data& h) {
  return primary_decomposition(h.torsion);
}

/// Order of the torsion subgroup; throws OverflowError when it does not fit.
int64_t torsion_order(std::span<const TorsionSummand> torsion);

/// Dimension of H^2(M; Z_2) = Hom(H_2, Z_2) when H_1 = 0.
int64_t mod2_betti2(const H2Data& h);

struct TInvariants {
  std::map<int64_t, int> t;  ///< prime -> number of distinct exponents
  int t_max = 0;
  int at(int64_t p) const {
    auto it = t.find(p);
    return it == t.end() ? 0 : it->second;
  }
};

TInvariants t_invariants(const H2Data& h);

struct GkResult {
  bool pass = true;
  int clause = 0;  ///< 1, 2 or 3 when failing
  std::string detail;
};

GkResult gk_check(const H2Data& h);

/// Index of M_{j;k_1,...,k_s;r} = X_j # r M_inf # M_{k_1} # ... # M_{k_s}.
struct BardenName {
  ExtendedIndex j{0};
  std::vector<int64_t> chain;  ///< k_1 | k_2 | ... | k_s, each > 1
  int64_t r = 0;

  bool operator==(const BardenName&) const = default;

  /// Compact index notation, e.g. "M_{0;7;1}".
  std::string index_string() const;
  /// Connected-sum form, e.g. "X_0 # M_inf # M_7"; X_0 = S^5 is dropped
  /// unless it is the whole manifold.
  std::string connected_sum() const;
  /// H_2 of the named manifold as normalized data.
  H2Data homology() const;
};

/// Result of the Barden read-off. For i in {0, inf} there is at most one
/// candidate; for finite i >= 1 every consistent choice is listed.
struct BardenClassification {
  std::vector<BardenName> candidates;
  std::string failure;  ///< set when no candidate exists

  bool realizable() const { return !candidates.empty(); }
  bool ambiguous() const { return candidates.size() > 1; }
};

BardenClassification barden_normal_form(const H2Data& h);

/// The d >= 3 with n = (d-1)(d-2)/2, if any.
std::optional<int64_t> is_triangular(int64_t n);

/// One prime-power block of a rational homology sphere's torsion.
struct PrimePowerPart {
  int64_t prime = 0;
  int exponent = 0;
  int64_t count = 0;  ///< c(p^exponent)

  bool operator==(const PrimePowerPart&) const = default;
};

struct KollarResult {
  bool pass = true;
  std::vector<PrimePowerPart> outside;  ///< parts whose c/2 is not triangular
};

/// Throws InputError when h.rank != 0.
KollarResult kollar_obstruction(const H2Data& h);

struct TStarFailure {
  PrimePowerPart part;
  std::optional<int64_t> degree;  ///< empty when c/2 is not triangular
  std::string reason;
};

struct TStarResult {
  bool pass = true;
  std::vector<TStarFailure> failures;
};

/// Throws InputError when h.rank != 0.
TStarResult tstar_check(const H2Data& h);

/// "3^2,5^4" style rendering of a torsion list ("0" for the trivial group).
std::string torsion_to_string(std::span<const TorsionSummand> torsion);

}  // namespace sbs
