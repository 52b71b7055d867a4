#pragma once

// Semi-regular Seifert bundle data over a base surface and the verifier that
// derives the topology of the 5-dimensional total space from it.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbs/abelian.hpp"
#include "sbs/lattice.hpp"

namespace sbs {

/// Isotropy surface D with multiplicity m and orbit invariant b.
struct OrbitDivisor {
  DivisorClass cls;
  int64_t m = 0;
  int64_t b = 0;
  int64_t genus = 0;  ///< cached adjunction genus of cls

  bool operator==(const OrbitDivisor&) const = default;
};

/// Facts a certificate relies on that are not checked at the level of
/// homology classes.
enum class AssumptionKind {
  /// The divisor classes have smooth representatives meeting transversally.
  SmoothTransverseRepresentatives,
  /// A blow-up centre lies off the isotropy locus; the argument names the
  /// exceptional class (1-based index).
  BlowupCentreOffLocus,
};

struct Assumption {
  AssumptionKind kind;
  int argument = 0;

  bool operator==(const Assumption&) const = default;
};

std::string assumption_token(AssumptionKind kind);
std::optional<AssumptionKind> parse_assumption_token(const std::string& token);

/// Claimed invariants carried alongside a certificate for re-verification.
struct CertificateClaims {
  std::optional<int64_t> rank;
  std::optional<std::vector<TorsionSummand>> torsion;
  std::optional<bool> spin;

  bool empty() const { return !rank && !torsion && !spin; }
  bool operator==(const CertificateClaims&) const = default;
};

/// Complete witness of a semi-regular Seifert bundle M -> X.
struct SeifertCertificate {
  SurfaceLattice surface = SurfaceLattice::cp2();
  std::vector<OrbitDivisor> divisors;
  DivisorClass bclass;  ///< c_1(B)
  std::vector<Assumption> assumptions;
  CertificateClaims claims;

  bool operator==(const SeifertCertificate&) const = default;
};

struct Violation {
  std::string clause;
  std::string message;
};

/// Raised by operations whose preconditions (validate ok, H_1 = 0) fail.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(std::string clause, const std::string& message)
      : std::runtime_error(clause + ": " + message), clause_(std::move(clause)) {}
  const std::string& clause() const { return clause_; }

 private:
  std::string clause_;
};

/// Every structural violation, empty when the certificate is well formed.
/// Clauses: lattice, multiplicity, orbit-range, orbit-coprime, genus-cache,
/// genus-negative, intersecting-coprime.
std::vector<Violation> validate(const SeifertCertificate& cert);

/// lcm of the multiplicities (1 without divisors).
int64_t total_multiplicity(const SeifertCertificate& cert);

/// c_1(M/X) = c_1(B) + sum (b_i / m_i) [D_i], accumulated term by term.
RationalClass c1_orbifold(const SeifertCertificate& cert);

/// m c_1(B) + sum b_i (m / m_i) [D_i] with m = lcm(m_i).
DivisorClass c1_over_m(const SeifertCertificate& cert);

struct H1Report {
  bool simply_connected_base = true;  ///< condition (1)
  bool restriction_surjective = true; ///< condition (2)
  bool c1_primitive = true;           ///< condition (3)
  std::string detail;

  bool vanishes() const { return simply_connected_base && restriction_surjective && c1_primitive; }
};

/// Decides H_1(M, Z) = 0. Condition (2) is tested prime by prime: for each
/// p dividing some m_i, the classes {D_i : p | m_i} must be independent mod
/// p. With pairwise coprime m_i this is gcd(divisibility(D_i), m_i) = 1.
H1Report h1_vanishes(const SeifertCertificate& cert);

struct TotalSpaceHomology {
  int64_t rank = 0;
  std::vector<TorsionSummand> torsion;
};

/// Z^{b2(X)-1} + sum Z_{m_i}^{2 g_i}; throws VerificationError unless H_1 = 0.
TotalSpaceHomology h2_of_total_space(const SeifertCertificate& cert);

/// GF(2) generators of ker(pi^*: H^2(X;Z_2) -> H^2(M;Z_2)).
std::vector<DivisorClass> pi_star_kernel(const SeifertCertificate& cert);

/// Spin test through w_2(M) = pi^*(w_2(X) + sum b_i [D_i] + c_1(B)).
bool w2_vanishes(const SeifertCertificate& cert);

/// Spin test through w_2(M) = pi^* w_2(X) + sum (m_i - 1)[E_i], usable only
/// when every m_i is odd (nullopt otherwise).
std::optional<bool> w2_vanishes_by_pullback(const SeifertCertificate& cert);

/// The numerator of c_1(M/X) is ample on the base.
bool kahler_positive(const SeifertCertificate& cert);

/// Whether pi_1(X - union D_i) can be taken abelian: every divisor has
/// D^2 > 0, or is an exceptional class disjoint from the other divisors whose
/// blow-up centre is recorded as lying off the isotropy locus.
bool pi1_abelian_assumed(const SeifertCertificate& cert);

struct FiveManifoldInvariants {
  H2Data h2;
  bool spin = false;
  bool h1_zero = false;
  bool pi1_abelian = false;

  bool simply_connected() const { return h1_zero && pi1_abelian; }
};

/// Full verification. Throws VerificationError when validate reports
/// violations or H_1 != 0.
FiveManifoldInvariants invariants_of(const SeifertCertificate& cert);

}  // namespace sbs
