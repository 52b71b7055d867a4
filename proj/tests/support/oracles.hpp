#pragma once

// Reference implementations used only by the tests. They share no code with
// the library beyond the plain data types, so agreement between the two is
// evidence rather than tautology.

#include <cstdint>
#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sbs/abelian.hpp"
#include "sbs/seifert.hpp"

namespace oracle {

using i64 = std::int64_t;

inline i64 g(i64 a, i64 b) { return std::gcd(a, b); }


inline i64 max_order(const std::vector<sbs::TorsionSummand>& t) {
  i64 m = 1;
  for (const auto& s : t) m = std::max(m, s.order);
  return m;
}

/// Primes up to n by trial division; the table grows on demand.
inline std::vector<i64> primes_upto(i64 n) {
  static std::vector<i64> table;
  static i64 covered = 1;
  for (i64 p = covered + 1; p <= n; ++p) {
    bool prime = true;
    for (i64 q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (prime) table.push_back(p);
  }
  covered = std::max(covered, n);
  return {table.begin(), std::upper_bound(table.begin(), table.end(), n)};
}

/// log_p |G[p^k]| = sum over summands of count * min(k, v_p(order)).
inline i64 log_p_torsion(const std::vector<sbs::TorsionSummand>& t, i64 p, i64 k) {
  i64 total = 0;
  for (const auto& s : t) {
    i64 v = 0;
    for (i64 o = s.order; o % p == 0; o /= p) ++v;
    total += s.count * std::min(k, v);
  }
  return total;
}

/// Number of cyclic summands of order exactly p^e, from the |G[p^k]|.
inline std::map<int, i64> p_counts(const std::vector<sbs::TorsionSummand>& t, i64 p) {
  // ge[k] - ge[k-1] counts summands of order >= p^k.
  std::vector<i64> ge{0};
  const i64 top = max_order(t) * p;
  for (i64 k = 1, pk = p; pk <= top; ++k, pk *= p) ge.push_back(log_p_torsion(t, p, k));
  std::map<int, i64> out;
  for (std::size_t k = 1; k < ge.size(); ++k) {
    i64 at_least_k = ge[k] - ge[k - 1];
    i64 at_least_next = k + 1 < ge.size() ? ge[k + 1] - ge[k] : 0;
    if (at_least_k > at_least_next) out[static_cast<int>(k)] = at_least_k - at_least_next;
  }
  return out;
}

/// Isomorphism by comparing |G[p^k]| for every prime power up to the
/// largest order.
inline bool isomorphic(const std::vector<sbs::TorsionSummand>& a, const std::vector<sbs::TorsionSummand>& b) {
  i64 top = std::max(max_order(a), max_order(b));
  for (i64 p : primes_upto(top))
    for (i64 k = 1, pk = p; pk <= top; ++k, pk *= p)
      if (log_p_torsion(a, p, k) != log_p_torsion(b, p, k)) return false;
  return true;
}

/// d >= 3 with (d-1)(d-2)/2 = n by direct search.
inline std::optional<i64> degree_of(i64 n) {
  for (i64 d = 3; (d - 1) * (d - 2) / 2 <= n; ++d)
    if ((d - 1) * (d - 2) / 2 == n) return d;
  return std::nullopt;
}

/// Semi-regular homology sphere predicate at the level of the group: some
/// presentation sum Z_{m_i}^{2g_i} has pairwise coprime m_i, triangular g_i
/// with gcd(m_i, d_i) = 1, and the manifold is spin.
inline bool sphere_yes(const std::vector<sbs::TorsionSummand>& t, bool spin) {
  if (!spin) return false;
  for (i64 p : primes_upto(max_order(t))) {
    if (log_p_torsion(t, p, 1) == 0) continue;
    auto c = p_counts(t, p);
    if (c.empty()) continue;
    if (c.size() != 1) return false;
    i64 count = c.begin()->second;
    if (count % 2 != 0) return false;
    auto d = degree_of(count / 2);
    if (!d || *d % p == 0) return false;
  }
  return true;
}

// Small dense linear algebra over F_p.
inline int rank_mod(std::vector<std::vector<i64>> rows, i64 p) {
  int rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (auto& r : rows)
    for (auto& v : r) v = ((v % p) + p) % p;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    i64 inv = 1;
    for (i64 k = 1; k < p; ++k)
      if (rows[rank][c] * k % p == 1) inv = k;
    for (auto& v : rows[rank]) v = v * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][c] == 0) continue;
      i64 f = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

inline bool in_span_mod2(const std::vector<i64>& v, const std::vector<std::vector<i64>>& gens) {
  auto with = gens;
  with.push_back(v);
  return rank_mod(with, 2) == rank_mod(gens, 2);
}

struct Lattice {
  std::vector<std::vector<i64>> gram;
  std::vector<i64> canonical;
  bool quadric = false;  // base CP1xCP1
  int blowups = 0;
};

/// Intersection form and canonical class written out by hand.
inline Lattice lattice_of(const sbs::SurfaceLattice& s) {
  Lattice L;
  L.quadric = s.base() == sbs::BaseSurface::CP1xCP1;
  L.blowups = s.blowups();
  std::size_t base = L.quadric ? 2 : 1;
  std::size_t n = base + static_cast<std::size_t>(L.blowups);
  L.gram.assign(n, std::vector<i64>(n, 0));
  L.canonical.assign(n, 1);
  if (L.quadric) {
    L.gram[0][1] = L.gram[1][0] = 1;
    L.canonical[0] = L.canonical[1] = -2;
  } else {
    L.gram[0][0] = 1;
    L.canonical[0] = -3;
  }
  for (std::size_t i = base; i < n; ++i) L.gram[i][i] = -1;
  return L;
}

inline i64 dot(const Lattice& L, const std::vector<i64>& a, const std::vector<i64>& b) {
  i64 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * L.gram[i][j] * b[j];
  return s;
}

inline bool ample(const Lattice& L, const std::vector<i64>& d) {
  std::size_t base = L.quadric ? 2 : 1;
  i64 sum = 0;
  for (std::size_t i = base; i < d.size(); ++i) {
    if (-d[i] <= 0) return false;
    sum += -d[i];
  }
  if (L.quadric) return d[0] > sum && d[1] > sum;
  return d[0] > sum;
}

struct Derived {
  bool structurally_ok = true;
  bool h1_zero = false;
  i64 rank = 0;
  std::vector<sbs::TorsionSummand> torsion;
  bool spin = false;
  bool spin_by_pullback = false;  // only meaningful when all m_i are odd
  bool all_odd = true;
  bool ample = false;
  int kernel_dim = 0;
  i64 mod2_betti = 0;
};

/// Topology of the total space recomputed from the certificate alone.
inline Derived derive(const sbs::SeifertCertificate& c) {
  Derived out;
  Lattice L = lattice_of(c.surface);
  std::size_t n = L.gram.size();
  i64 m = 1;
  for (const auto& d : c.divisors) {
    m = std::lcm(m, d.m);
    if (d.b <= 0 || d.b >= d.m || g(d.b, d.m) != 1) out.structurally_ok = false;
    i64 twice = dot(L, L.canonical, d.cls.coeffs) + dot(L, d.cls.coeffs, d.cls.coeffs) + 2;
    if (twice % 2 != 0 || twice / 2 != d.genus) out.structurally_ok = false;
    if (d.m % 2 == 0) out.all_odd = false;
  }
  std::vector<i64> c1(n, 0), v(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    c1[k] = m * c.bclass.coeffs[k];
    v[k] = c.bclass.coeffs[k];
  }
  for (const auto& d : c.divisors)
    for (std::size_t k = 0; k < n; ++k) {
      c1[k] += d.b * (m / d.m) * d.cls.coeffs[k];
      v[k] += d.b * d.cls.coeffs[k];
    }
  i64 content = 0;
  for (auto x : c1) content = g(content, x);
  bool surjective = true;
  std::vector<i64> primes;
  for (const auto& d : c.divisors) {
    i64 x = d.m;
    for (i64 q = 2; q <= x; ++q) {
      if (x % q != 0) continue;
      primes.push_back(q);
      while (x % q == 0) x /= q;
    }
  }
  for (i64 p : primes) {
    std::vector<std::vector<i64>> rows;
    for (const auto& d : c.divisors)
      if (d.m % p == 0) rows.push_back(d.cls.coeffs);
    if (!rows.empty() && rank_mod(rows, p) != static_cast<int>(rows.size())) surjective = false;
  }
  out.h1_zero = content == 1 && surjective;
  out.rank = static_cast<i64>(n) - 1;
  for (const auto& d : c.divisors)
    if (d.genus > 0) out.torsion.push_back({d.m, 2 * d.genus});
  std::vector<std::vector<i64>> kernel;
  if (out.all_odd) kernel.push_back(v);
  else
    for (const auto& d : c.divisors)
      if (d.m % 2 == 0) kernel.push_back(d.cls.coeffs);
  out.kernel_dim = rank_mod(kernel, 2);
  std::vector<i64> w2(n);
  for (std::size_t k = 0; k < n; ++k) w2[k] = L.canonical[k] + v[k];
  out.spin = in_span_mod2(w2, kernel);
  out.spin_by_pullback = in_span_mod2(L.canonical, kernel);
  out.ample = ample(L, c1);
  out.mod2_betti = out.rank;
  for (const auto& d : c.divisors)
    if (d.m % 2 == 0) out.mod2_betti += 2 * d.genus;
  return out;
}

/// Membership in the positive torsion table by explicit enumeration of the
/// table's groups up to the given bounds.
inline bool positive_table(const std::vector<sbs::TorsionSummand>& t, i64 max_square_order, i64 max_two_count) {
  std::vector<std::vector<sbs::TorsionSummand>> table{{}};
  for (i64 m = 2; m <= max_square_order; ++m) table.push_back({{m, 2}});
  table.push_back({{5, 4}});
  table.push_back({{4, 4}});
  table.push_back({{3, 4}});
  table.push_back({{3, 6}});
  table.push_back({{3, 8}});
  for (i64 k = 2; k <= max_two_count; k += 2) table.push_back({{2, k}});
  for (const auto& entry : table)
    if (isomorphic(t, entry)) return true;
  return false;
}

}  // namespace oracle
