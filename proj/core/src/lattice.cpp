#include "sbs/lattice.hpp"

#include <algorithm>
#include <cctype>

#include "sbs/arith.hpp"

namespace sbs {

bool DivisorClass::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](int64_t c) { return c == 0; });
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  if (o.size() != size()) throw InputError("divisor classes from different lattices");
  for (std::size_t i = 0; i < size(); ++i) coeffs[i] = checked_add(coeffs[i], o.coeffs[i]);
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  if (o.size() != size()) throw InputError("divisor classes from different lattices");
  for (std::size_t i = 0; i < size(); ++i) coeffs[i] = checked_add(coeffs[i], -o.coeffs[i]);
  return *this;
}

DivisorClass operator*(int64_t k, const DivisorClass& a) {
  DivisorClass out = a;
  for (auto& c : out.coeffs) c = checked_mul(k, c);
  return out;
}

DivisorClass DivisorClass::padded(std::size_t n) const {
  if (n < size()) throw InputError("cannot pad a class to a shorter basis");
  DivisorClass out = *this;
  out.coeffs.resize(n, 0);
  return out;
}

int64_t divisibility(const DivisorClass& d) {
  int64_t g = 0;
  for (auto c : d.coeffs) g = gcd(g, c);
  return g;
}

RationalClass::RationalClass(DivisorClass num, int64_t den) : numerator(std::move(num)), denominator(den) {
  if (den <= 0) throw InputError("rational class denominator must be positive");
  int64_t g = gcd(divisibility(numerator), denominator);
  if (g > 1) {
    for (auto& c : numerator.coeffs) c /= g;
    denominator /= g;
  }
}

RationalClass& RationalClass::operator+=(const RationalClass& o) {
  int64_t den = lcm(denominator, o.denominator);
  DivisorClass sum = (den / denominator) * numerator;
  sum += (den / o.denominator) * o.numerator;
  *this = RationalClass(std::move(sum), den);
  return *this;
}

namespace {

void require_same_length(std::span<const DivisorClass> gens, std::size_t n) {
  for (const auto& g : gens)
    if (g.size() != n) throw InputError("divisor classes from different lattices");
}

// Row-reduces mod p and returns the echelon rows (pivot-first form).
struct EchelonBasis {
  int64_t p;
  std::vector<std::vector<int64_t>> rows;
  std::vector<std::size_t> pivots;

  // Reduces v against the basis in place; returns true if v becomes zero.
  bool reduce(std::vector<int64_t>& v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      int64_t c = v[pivots[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = floor_mod(v[j] - c * rows[r][j], p);
    }
    return std::all_of(v.begin(), v.end(), [](int64_t x) { return x == 0; });
  }

  bool insert(std::vector<int64_t> v) {
    for (auto& x : v) x = floor_mod(x, p);
    if (reduce(v)) return false;
    std::size_t piv = 0;
    while (v[piv] == 0) ++piv;
    int64_t inv = mod_inverse(v[piv], p);
    for (auto& x : v) x = floor_mod(x * inv, p);
    for (auto& row : rows) {
      int64_t c = row[piv];
      if (c == 0) continue;
      for (std::size_t j = 0; j < row.size(); ++j) row[j] = floor_mod(row[j] - c * v[j], p);
    }
    rows.push_back(std::move(v));
    pivots.push_back(piv);
    return true;
  }
};

}  // namespace

int fp_rank(std::span<const DivisorClass> generators, int64_t p) {
  if (generators.empty()) return 0;
  require_same_length(generators, generators.front().size());
  EchelonBasis basis{p, {}, {}};
  int rank = 0;
  for (const auto& g : generators)
    if (basis.insert(g.coeffs)) ++rank;
  return rank;
}

int f2_rank(std::span<const DivisorClass> generators) { return fp_rank(generators, 2); }

bool f2_span_membership(const DivisorClass& v, std::span<const DivisorClass> generators) {
  require_same_length(generators, v.size());
  EchelonBasis basis{2, {}, {}};
  for (const auto& g : generators) basis.insert(g.coeffs);
  std::vector<int64_t> w = v.coeffs;
  for (auto& x : w) x = floor_mod(x, 2);
  return basis.reduce(w);
}

SurfaceLattice SurfaceLattice::blowup_cp2(int k) {
  if (k < 1) throw InputError("blow-up count must be at least 1");
  return SurfaceLattice(BaseSurface::CP2, k);
}

SurfaceLattice SurfaceLattice::positive_canonical_plane() {
  SurfaceLattice s(BaseSurface::CP2, 0);
  s.canonical_ = DivisorClass({3});
  s.hypothetical_ = true;
  return s;
}

SurfaceLattice::SurfaceLattice(BaseSurface base, int blowups) : base_(base), blowups_(blowups) {
  if (blowups < 0) throw InputError("negative blow-up count");
  std::size_t head = base == BaseSurface::CP2 ? 1 : 2;
  std::size_t n = head + static_cast<std::size_t>(blowups);
  gram_.assign(n, std::vector<int64_t>(n, 0));
  canonical_ = DivisorClass::zero(n);
  if (base == BaseSurface::CP2) {
    labels_.push_back("H");
    gram_[0][0] = 1;
    canonical_[0] = -3;
  } else {
    labels_ = {"H1", "H2"};
    gram_[0][1] = gram_[1][0] = 1;
    canonical_[0] = canonical_[1] = -2;
  }
  for (int i = 1; i <= blowups; ++i) {
    std::size_t idx = head + static_cast<std::size_t>(i - 1);
    labels_.push_back("E" + std::to_string(i));
    gram_[idx][idx] = -1;
    canonical_[idx] = 1;
  }
}

std::string SurfaceLattice::name() const {
  if (hypothetical_) return "CP2[K=+3H]";
  std::string s = base_ == BaseSurface::CP2 ? "CP2" : "CP1xCP1";
  if (blowups_ > 0) s += "#" + std::to_string(blowups_);
  return s;
}

std::size_t SurfaceLattice::exceptional_index(int i) const {
  if (i < 1 || i > blowups_) throw InputError("no exceptional class E" + std::to_string(i));
  return (base_ == BaseSurface::CP2 ? 1 : 2) + static_cast<std::size_t>(i - 1);
}

DivisorClass SurfaceLattice::exceptional(int i) const { return basis(exceptional_index(i)); }

DivisorClass SurfaceLattice::basis(std::size_t idx) const {
  if (idx >= b2()) throw InputError("basis index out of range");
  DivisorClass d = DivisorClass::zero(b2());
  d[idx] = 1;
  return d;
}

SurfaceLattice SurfaceLattice::blow_up() const {
  if (hypothetical_) throw InputError("cannot blow up a hypothetical surface");
  return SurfaceLattice(base_, blowups_ + 1);
}

void SurfaceLattice::check_compatible(const DivisorClass& d) const {
  if (d.size() != b2())
    throw InputError("class of length " + std::to_string(d.size()) + " does not belong to " + name());
}

int64_t SurfaceLattice::intersect(const DivisorClass& a, const DivisorClass& b) const {
  check_compatible(a);
  check_compatible(b);
  int64_t sum = 0;
  for (std::size_t i = 0; i < b2(); ++i)
    for (std::size_t j = 0; j < b2(); ++j)
      if (gram_[i][j] != 0) sum = checked_add(sum, checked_mul(checked_mul(a[i], gram_[i][j]), b[j]));
  return sum;
}

std::optional<int64_t> SurfaceLattice::adjunction_genus(const DivisorClass& d) const {
  int64_t twice = checked_add(intersect(canonical_, d), self_intersection(d));
  if (twice % 2 != 0) return std::nullopt;
  return twice / 2 + 1;
}

bool SurfaceLattice::is_ample(const DivisorClass& d) const {
  check_compatible(d);
  std::size_t head = base_ == BaseSurface::CP2 ? 1 : 2;
  int64_t exc_sum = 0;
  for (std::size_t i = head; i < b2(); ++i) {
    int64_t b = -d[i];
    if (b <= 0) return false;
    exc_sum = checked_add(exc_sum, b);
  }
  if (base_ == BaseSurface::CP2) return d[0] > exc_sum;
  return d[0] > exc_sum && d[1] > exc_sum;
}

DivisorClass SurfaceLattice::w2() const {
  DivisorClass w = canonical_;
  for (auto& c : w.coeffs) c = floor_mod(c, 2);
  return w;
}

int64_t SurfaceLattice::determinant() const {
  // Fraction-free Bareiss elimination; the matrices here are tiny.
  std::size_t n = b2();
  auto a = gram_;
  int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

std::pair<int, int> SurfaceLattice::signature() const {
  // Symmetric elimination over Q (Sylvester's law of inertia). Entries are
  // kept as numerator/denominator pairs; the matrices here are tiny.
  struct Q {
    int64_t n, d;
  };
  auto norm = [](Q q) {
    if (q.d < 0) q = {-q.n, -q.d};
    int64_t g = gcd(q.n, q.d);
    return g > 1 ? Q{q.n / g, q.d / g} : q;
  };
  auto sub = [&](Q a, Q b) { return norm({a.n * b.d - b.n * a.d, a.d * b.d}); };
  auto mul = [&](Q a, Q b) { return norm({a.n * b.n, a.d * b.d}); };
  auto div = [&](Q a, Q b) { return norm({a.n * b.d, a.d * b.n}); };

  std::size_t n = b2();
  std::vector<std::vector<Q>> a(n, std::vector<Q>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = {gram_[i][j], 1};

  int pos = 0, neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k].n == 0) {
      // Congruence by e_k -> e_k + e_j for some j with a[k][j] != 0.
      std::size_t j = k + 1;
      while (j < n && a[k][j].n == 0) ++j;
      if (j == n) continue;
      for (std::size_t c = 0; c < n; ++c) a[k][c] = norm({a[k][c].n * a[j][c].d + a[j][c].n * a[k][c].d, a[k][c].d * a[j][c].d});
      for (std::size_t r = 0; r < n; ++r) a[r][k] = norm({a[r][k].n * a[r][j].d + a[r][j].n * a[r][k].d, a[r][k].d * a[r][j].d});
    }
    Q piv = a[k][k];
    if (piv.n > 0) ++pos;
    else ++neg;
    for (std::size_t i = k + 1; i < n; ++i) {
      Q f = div(a[i][k], piv);
      for (std::size_t j = k; j < n; ++j) a[i][j] = sub(a[i][j], mul(f, a[k][j]));
    }
    for (std::size_t j = k + 1; j < n; ++j) a[k][j] = {0, 1};
    for (std::size_t i = k + 1; i < n; ++i) a[i][k] = {0, 1};
  }
  return {pos, neg};
}

std::optional<SurfaceLattice> parse_surface_name(const std::string& name) {
  std::string base = name;
  int k = 0;
  if (auto hash = name.find('#'); hash != std::string::npos) {
    base = name.substr(0, hash);
    std::string digits = name.substr(hash + 1);
    if (digits.empty() || digits.size() > 6) return std::nullopt;
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    k = std::stoi(digits);
    if (k < 1) return std::nullopt;
  }
  if (base == "CP2") return SurfaceLattice(BaseSurface::CP2, k);
  if (base == "CP1xCP1") return SurfaceLattice(BaseSurface::CP1xCP1, k);
  return std::nullopt;
}

}  // namespace sbs
