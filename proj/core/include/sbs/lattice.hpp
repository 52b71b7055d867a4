#pragma once

// Intersection lattices of the base surfaces CP^2, CP^1 x CP^1 and their
// blow-ups, with adjunction genus, ampleness and GF(2) linear algebra.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sbs {

/// Integer coefficient vector in a lattice basis.
struct DivisorClass {
  std::vector<int64_t> coeffs;

  DivisorClass() = default;
  explicit DivisorClass(std::vector<int64_t> c) : coeffs(std::move(c)) {}
  static DivisorClass zero(std::size_t n) { return DivisorClass(std::vector<int64_t>(n, 0)); }

  std::size_t size() const { return coeffs.size(); }
  int64_t operator[](std::size_t i) const { return coeffs[i]; }
  int64_t& operator[](std::size_t i) { return coeffs[i]; }
  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(int64_t k, const DivisorClass& a);

  /// Appends zero coefficients up to length n.
  DivisorClass padded(std::size_t n) const;

  bool operator==(const DivisorClass&) const = default;
};

/// Exact rational class numerator / denominator in lowest terms.
struct RationalClass {
  DivisorClass numerator;
  int64_t denominator = 1;

  RationalClass() = default;
  /// Reduces to lowest terms; throws InputError for denominator <= 0.
  RationalClass(DivisorClass num, int64_t den);

  RationalClass& operator+=(const RationalClass& o);
  bool operator==(const RationalClass&) const = default;
};

/// Coefficient gcd; 0 for the zero class.
int64_t divisibility(const DivisorClass& d);

/// GF(2) rank of the classes reduced mod 2.
int f2_rank(std::span<const DivisorClass> generators);

/// Whether v mod 2 lies in the GF(2) span of the generators mod 2.
bool f2_span_membership(const DivisorClass& v, std::span<const DivisorClass> generators);

/// Rank over F_p of the classes reduced mod p (p prime).
int fp_rank(std::span<const DivisorClass> generators, int64_t p);

enum class BaseSurface { CP2, CP1xCP1 };

/// Unimodular intersection lattice of a base surface blown up `blowups`
/// times. Bases: CP2 -> [H, E_1..E_k]; CP1xCP1 -> [H1, H2, E_1..E_k].
class SurfaceLattice {
 public:
  static SurfaceLattice cp2() { return SurfaceLattice(BaseSurface::CP2, 0); }
  static SurfaceLattice cp1xcp1() { return SurfaceLattice(BaseSurface::CP1xCP1, 0); }
  /// CP^2 # k conj(CP^2), k >= 1.
  static SurfaceLattice blowup_cp2(int k);
  /// A b_2 = 1 lattice with canonical class +3H. Such a symplectic surface
  /// is not known to exist; only the K-contact necessary check uses it.
  static SurfaceLattice positive_canonical_plane();

  SurfaceLattice(BaseSurface base, int blowups);

  BaseSurface base() const { return base_; }
  int blowups() const { return blowups_; }
  bool hypothetical() const { return hypothetical_; }
  std::size_t b2() const { return labels_.size(); }
  int64_t euler_characteristic() const { return 2 + static_cast<int64_t>(b2()); }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  const std::vector<std::vector<int64_t>>& gram() const { return gram_; }
  const DivisorClass& canonical() const { return canonical_; }
  /// Short name: "CP2", "CP1xCP1", "CP2#2", "CP1xCP1#1".
  std::string name() const;

  /// Index of E_i (1-based) in the basis.
  std::size_t exceptional_index(int i) const;
  /// The class of E_i, i in [1, blowups].
  DivisorClass exceptional(int i) const;
  /// Basis vector number idx.
  DivisorClass basis(std::size_t idx) const;

  /// Lattice with one more exceptional class appended to the basis.
  SurfaceLattice blow_up() const;

  /// a^T G b; throws InputError on length mismatch.
  int64_t intersect(const DivisorClass& a, const DivisorClass& b) const;
  int64_t self_intersection(const DivisorClass& a) const { return intersect(a, a); }

  /// (K.D + D.D + 2) / 2, or nullopt when K.D + D.D is odd.
  std::optional<int64_t> adjunction_genus(const DivisorClass& d) const;

  /// Sufficient ampleness criterion per surface kind:
  ///   CP2: a > 0.   CP1xCP1: a1, a2 > 0.
  ///   CP2#k, D = aH - sum b_i E_i: all b_i > 0 and a > sum b_i.
  ///   CP1xCP1#k, D = a1 H1 + a2 H2 - sum b_i E_i: b_i > 0, a1, a2 > sum b_i.
  bool is_ample(const DivisorClass& d) const;

  /// w_2 = K mod 2, as a 0/1 vector.
  DivisorClass w2() const;

  int64_t determinant() const;
  /// (positive, negative) eigenvalue counts.
  std::pair<int, int> signature() const;

  void check_compatible(const DivisorClass& d) const;

  bool operator==(const SurfaceLattice& o) const {
    return base_ == o.base_ && blowups_ == o.blowups_ && hypothetical_ == o.hypothetical_;
  }

 private:
  BaseSurface base_;
  int blowups_;
  bool hypothetical_ = false;
  std::vector<std::string> labels_;
  std::vector<std::vector<int64_t>> gram_;
  DivisorClass canonical_;
};

/// Parses names produced by SurfaceLattice::name(); nullopt otherwise.
std::optional<SurfaceLattice> parse_surface_name(const std::string& name);

}  // namespace sbs
