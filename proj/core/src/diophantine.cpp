#include "sbs/diophantine.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_set>

#include "sbs/arith.hpp"

namespace sbs {

namespace {

bool all_units(const std::vector<int64_t>& b, const std::vector<int64_t>& moduli) {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] <= 0 || b[i] >= moduli[i] || gcd(b[i], moduli[i]) != 1) return false;
  return true;
}

int64_t weighted_sum(const std::vector<int64_t>& coeffs, const std::vector<int64_t>& b) {
  int64_t s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) s = checked_add(s, checked_mul(coeffs[i], b[i]));
  return s;
}

__extension__ using int128 = __int128;

int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
  return static_cast<int64_t>(((static_cast<int128>(a) * b) % m + m) % m);
}

// Particular solution when every c_i * m_i is a multiple of extra: b_i only
// matters mod m_i, so the iterated extended gcd runs on residues and beta is
// recovered exactly at the end.
std::optional<DiophantineSolution> modular_particular(const std::vector<int64_t>& coeffs,
                                                      const std::vector<int64_t>& moduli, int64_t extra,
                                                      int64_t target, int64_t g) {
  const int64_t E = extra < 0 ? -extra : extra;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (mul_mod(coeffs[i], moduli[i], E) != 0) return std::nullopt;
  std::vector<int64_t> b;
  int64_t acc = E;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    auto bz = extended_gcd(acc, coeffs[i]);
    for (std::size_t k = 0; k < b.size(); ++k) b[k] = mul_mod(b[k], bz.x, moduli[k]);
    b.push_back(floor_mod(bz.y, moduli[i]));
    acc = bz.gcd;
  }
  const int64_t scale = target / g;
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = mul_mod(b[k], scale, moduli[k]);
  int64_t rest = checked_add(target, -weighted_sum(coeffs, b));
  if (rest % extra != 0) return std::nullopt;
  return DiophantineSolution{rest / extra, b};
}

// Particular solution by iterated extended gcd, then b_i mod m_i with the
// shift absorbed by beta.
std::optional<DiophantineSolution> reduced_particular(const std::vector<int64_t>& coeffs,
                                                      const std::vector<int64_t>& moduli, int64_t extra,
                                                      int64_t target, int64_t g) {
  if (auto s = modular_particular(coeffs, moduli, extra, target, g)) return s;
  std::vector<int64_t> x{1};
  int64_t acc = extra;
  for (int64_t c : coeffs) {
    auto bz = extended_gcd(acc, c);
    for (auto& v : x) v = checked_mul(v, bz.x);
    x.push_back(bz.y);
    acc = bz.gcd;
  }
  int64_t scale = target / g;
  for (auto& v : x) v = checked_mul(v, scale);

  DiophantineSolution s{x[0], std::vector<int64_t>(x.begin() + 1, x.end())};
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    int64_t shift = checked_mul(coeffs[i], moduli[i]);
    if (shift % extra != 0) return std::nullopt;
    int64_t q = floor_div(s.b[i], moduli[i]);
    s.b[i] -= q * moduli[i];
    s.beta = checked_add(s.beta, checked_mul(q, shift / extra));
  }
  return s;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

constexpr int64_t kSearchLimit = 50'000'000;

// Exact search for extra != 0: sum c_i b_i = target (mod |extra|). The
// modulus splits into prime powers; variables that touch the same prime
// powers are solved together by a residue table.
std::optional<std::vector<int64_t>> residue_search(const std::vector<int64_t>& coeffs,
                                                   const std::vector<int64_t>& moduli, int64_t extra,
                                                   int64_t target) {
  const int64_t E = extra < 0 ? -extra : extra;
  std::vector<int64_t> qpow;
  for (auto [p, e] : factorize(E)) {
    int64_t pe = 1;
    for (int k = 0; k < e; ++k) pe *= p;
    qpow.push_back(pe);
  }
  const std::size_t nq = qpow.size();
  const std::size_t nv = coeffs.size();
  UnionFind uf(nq);
  std::vector<std::vector<std::size_t>> touches(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t k = 0; k < nq; ++k)
      if (coeffs[i] % qpow[k] != 0) touches[i].push_back(k);
    for (std::size_t k = 1; k < touches[i].size(); ++k) uf.unite(touches[i][0], touches[i][k]);
  }

  std::vector<int64_t> b(nv, 1);
  std::set<std::size_t> roots;
  for (std::size_t k = 0; k < nq; ++k) roots.insert(uf.find(k));
  for (std::size_t root : roots) {
    int64_t M = 1;
    for (std::size_t k = 0; k < nq; ++k)
      if (uf.find(k) == root) M *= qpow[k];
    std::vector<std::size_t> vars;
    for (std::size_t i = 0; i < nv; ++i)
      if (!touches[i].empty() && uf.find(touches[i][0]) == root) vars.push_back(i);
    const int64_t t = floor_mod(target, M);
    if (vars.empty()) {
      if (t != 0) return std::nullopt;
      continue;
    }

    // choice[layer][residue] = unit picked for vars[layer] to reach residue.
    std::vector<std::vector<int64_t>> choice(vars.size(), std::vector<int64_t>(M, 0));
    std::vector<char> reach(M, 0), next(M, 0);
    reach[0] = 1;
    int64_t work = 0;
    for (std::size_t layer = 0; layer < vars.size(); ++layer) {
      std::size_t i = vars[layer];
      std::vector<std::pair<int64_t, int64_t>> steps;  // (residue step, unit)
      std::unordered_set<int64_t> seen;
      for (int64_t u = 1; u < moduli[i]; ++u) {
        if (gcd(u, moduli[i]) != 1) continue;
        int64_t step = floor_mod(checked_mul(floor_mod(coeffs[i], M), u), M);
        if (seen.insert(step).second) steps.emplace_back(step, u);
        if (static_cast<int64_t>(seen.size()) == M) break;
      }
      work += M * static_cast<int64_t>(steps.size());
      if (work > kSearchLimit) throw OverflowError("residue search exceeds the work limit");
      std::fill(next.begin(), next.end(), 0);
      for (int64_t r = 0; r < M; ++r) {
        if (!reach[r]) continue;
        for (auto [step, u] : steps) {
          int64_t nr = (r + step) % M;
          if (!next[nr]) {
            next[nr] = 1;
            choice[layer][nr] = u;
          }
        }
      }
      reach.swap(next);
    }
    if (!reach[t]) return std::nullopt;
    int64_t r = t;
    for (std::size_t layer = vars.size(); layer-- > 0;) {
      std::size_t i = vars[layer];
      int64_t u = choice[layer][r];
      b[i] = u;
      r = floor_mod(r - checked_mul(floor_mod(coeffs[i], M), u), M);
    }
  }
  return b;
}

// extra = 0: enumerate unit boxes with range pruning.
struct BoxSearch {
  const std::vector<int64_t>& coeffs;
  const std::vector<int64_t>& moduli;
  std::vector<int64_t> lo, hi;  // suffix bounds of the remaining sum
  std::vector<int64_t> b;
  std::set<std::pair<std::size_t, int64_t>> dead;
  int64_t work = 0;

  BoxSearch(const std::vector<int64_t>& c, const std::vector<int64_t>& m)
      : coeffs(c), moduli(m), lo(c.size() + 1, 0), hi(c.size() + 1, 0), b(c.size(), 0) {
    for (std::size_t i = c.size(); i-- > 0;) {
      lo[i] = checked_add(lo[i + 1], c[i]);
      hi[i] = checked_add(hi[i + 1], checked_mul(c[i], m[i] - 1));
    }
  }

  bool run(std::size_t i, int64_t remaining) {
    if (i == coeffs.size()) return remaining == 0;
    if (remaining < lo[i] || remaining > hi[i]) return false;
    if (dead.count({i, remaining})) return false;
    for (int64_t u = 1; u < moduli[i]; ++u) {
      if (++work > kSearchLimit) throw OverflowError("box search exceeds the work limit");
      int64_t rest = remaining - coeffs[i] * u;
      if (rest < lo[i + 1]) break;
      if (gcd(u, moduli[i]) != 1) continue;
      b[i] = u;
      if (run(i + 1, rest)) return true;
    }
    dead.insert({i, remaining});
    return false;
  }
};

}  // namespace

int64_t evaluate(const DiophantineSolution& s, const std::vector<int64_t>& coeffs, int64_t extra) {
  if (s.b.size() != coeffs.size()) throw InputError("solution and coefficient lengths differ");
  return checked_add(checked_mul(extra, s.beta), weighted_sum(coeffs, s.b));
}

DiophantineOutcome solve_linear_combination(const std::vector<int64_t>& coeffs,
                                            const std::vector<int64_t>& moduli, int64_t extra,
                                            int64_t target) {
  if (target == 0) throw InputError("target must be non-zero");
  if (coeffs.empty()) throw InputError("coefficient list is empty");
  if (coeffs.size() != moduli.size()) throw InputError("coefficient and modulus lists differ in length");
  for (auto c : coeffs)
    if (c <= 0) throw InputError("coefficients must be positive");
  for (auto m : moduli)
    if (m < 2) throw InputError("moduli must be at least 2");

  int64_t g = extra;
  for (auto c : coeffs) g = gcd(g, c);
  if (target % g != 0) {
    return Unsolvable{g, "gcd " + std::to_string(g) + " of the coefficients does not divide " +
                             std::to_string(target)};
  }

  if (extra == 0) {
    BoxSearch search(coeffs, moduli);
    if (!search.run(0, target)) return Unsolvable{g, "no unit residues b_i in (0, m_i) reach the target"};
    return DiophantineSolution{0, search.b};
  }

  if (auto s = reduced_particular(coeffs, moduli, extra, target, g); s && all_units(s->b, moduli)) return *s;

  auto b = residue_search(coeffs, moduli, extra, target);
  if (!b) return Unsolvable{g, "no unit residues b_i mod m_i satisfy the relation mod " + std::to_string(extra)};
  int64_t rest = checked_add(target, -weighted_sum(coeffs, *b));
  return DiophantineSolution{rest / extra, *b};
}

}  // namespace sbs
