#include "sbs/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace sbs {

std::vector<TorsionSummand> normalize(std::span<const TorsionSummand> raw) {
  std::map<int64_t, int64_t> merged;
  for (const auto& s : raw) {
    if (s.order < 2)
      throw InputError("torsion order " + std::to_string(s.order) + " is below 2");
    if (s.count < 1)
      throw InputError("torsion multiplicity " + std::to_string(s.count) + " is below 1");
    merged[s.order] = checked_add(merged[s.order], s.count);
  }
  std::vector<TorsionSummand> out;
  out.reserve(merged.size());
  for (const auto& [order, count] : merged) out.push_back({order, count});
  return out;
}

H2Data make_h2(int64_t rank, std::span<const TorsionSummand> raw, BardenIndex barden_i) {
  if (rank < 0) throw InputError("rank must be non-negative");
  return H2Data{rank, normalize(raw), barden_i};
}

bool H2Data::operator==(const H2Data& other) const {
  return rank == other.rank && barden_i == other.barden_i &&
         primary_decomposition(torsion) == primary_decomposition(other.torsion);
}

PrimaryDecomposition primary_decomposition(std::span<const TorsionSummand> torsion) {
  PrimaryDecomposition out;
  for (const auto& s : torsion) {
    for (const auto& [p, e] : factorize(s.order)) {
      auto& slot = out[p][e];
      slot = checked_add(slot, s.count);
    }
  }
  return out;
}

int64_t torsion_order(std::span<const TorsionSummand> torsion) {
  int64_t n = 1;
  for (const auto& s : torsion)
    for (int64_t i = 0; i < s.count; ++i) n = checked_mul(n, s.order);
  return n;
}

int64_t mod2_betti2(const H2Data& h) {
  int64_t dim = h.rank;
  auto pd = primary_decomposition(h);
  if (auto it = pd.find(2); it != pd.end())
    for (const auto& [e, c] : it->second) dim += c;
  return dim;
}

TInvariants t_invariants(const H2Data& h) {
  TInvariants out;
  for (const auto& [p, exps] : primary_decomposition(h)) {
    int t = static_cast<int>(exps.size());
    out.t[p] = t;
    out.t_max = std::max(out.t_max, t);
  }
  return out;
}

GkResult gk_check(const H2Data& h) {
  if (!(h.barden_i == BardenIndex(0) || h.barden_i.is_infinite()))
    return {false, 1, "i(M) = " + h.barden_i.to_string() + " is not 0 or inf"};
  auto t = t_invariants(h);
  for (const auto& [p, tp] : t.t) {
    if (tp > h.rank + 1) {
      std::ostringstream os;
      os << "t(" << p << ") = " << tp << " > k+1 = " << h.rank + 1;
      return {false, 2, os.str()};
    }
  }
  if (h.barden_i.is_infinite() && t.at(2) > h.rank) {
    std::ostringstream os;
    os << "i(M) = inf and t(2) = " << t.at(2) << " > k = " << h.rank;
    return {false, 3, os.str()};
  }
  return {};
}

std::string BardenName::index_string() const {
  std::ostringstream os;
  os << "M_{" << (j.is_infinite() ? std::string("inf") : std::to_string(j.value())) << ';';
  for (std::size_t i = 0; i < chain.size(); ++i) os << (i ? "," : "") << chain[i];
  os << ';' << r << '}';
  return os.str();
}

std::string BardenName::connected_sum() const {
  std::vector<std::string> parts;
  if (j.is_infinite()) parts.push_back("X_inf");
  else if (j.value() < 0) parts.push_back("X_{" + std::to_string(j.value()) + "}");
  else if (j.value() > 0) parts.push_back("X_" + std::to_string(j.value()));
  if (r == 1) parts.push_back("M_inf");
  if (r > 1) parts.push_back(std::to_string(r) + " M_inf");
  for (auto k : chain) parts.push_back("M_" + std::to_string(k));
  if (parts.empty()) return "X_0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " # " : "") + parts[i];
  return out;
}

H2Data BardenName::homology() const {
  std::vector<TorsionSummand> raw;
  int64_t rank = r;
  BardenIndex i{0};
  if (j.is_infinite()) {
    rank += 1;
    i = BardenIndex::infinity();
  } else if (j.value() == -1) {
    raw.push_back({2, 1});
    i = BardenIndex(1);
  } else if (j.value() > 0) {
    raw.push_back({int64_t{1} << j.value(), 2});
    i = BardenIndex(j.value());
  }
  for (auto k : chain) raw.push_back({k, 2});
  return make_h2(rank, raw, i);
}

namespace {

// Invariant factors of a group given by its primary decomposition,
// ascending so that each divides the next.
std::vector<int64_t> invariant_factors(const PrimaryDecomposition& pd) {
  // Per prime, exponents listed in descending order with multiplicity.
  std::vector<std::vector<int>> per_prime;
  std::vector<int64_t> primes;
  std::size_t longest = 0;
  for (const auto& [p, exps] : pd) {
    std::vector<int> list;
    for (auto it = exps.rbegin(); it != exps.rend(); ++it)
      for (int64_t c = 0; c < it->second; ++c) list.push_back(it->first);
    longest = std::max(longest, list.size());
    per_prime.push_back(std::move(list));
    primes.push_back(p);
  }
  std::vector<int64_t> factors(longest, 1);
  for (std::size_t k = 0; k < primes.size(); ++k)
    for (std::size_t idx = 0; idx < per_prime[k].size(); ++idx)
      for (int e = 0; e < per_prime[k][idx]; ++e) factors[idx] = checked_mul(factors[idx], primes[k]);
  std::reverse(factors.begin(), factors.end());
  return factors;
}

// Halves every multiplicity; nullopt when some multiplicity is odd.
std::optional<PrimaryDecomposition> halve(const PrimaryDecomposition& pd, std::string& why) {
  PrimaryDecomposition half;
  for (const auto& [p, exps] : pd) {
    for (const auto& [e, c] : exps) {
      if (c % 2 != 0) {
        std::ostringstream os;
        os << "c(" << p << '^' << e << ") = " << c << " is odd; torsion does not split as G + G";
        why = os.str();
        return std::nullopt;
      }
      half[p][e] = c / 2;
    }
  }
  return half;
}

// Removes `count` copies of Z_{p^e}; false if not present.
bool remove_part(PrimaryDecomposition& pd, int64_t p, int e, int64_t count) {
  auto pit = pd.find(p);
  if (pit == pd.end()) return false;
  auto eit = pit->second.find(e);
  if (eit == pit->second.end() || eit->second < count) return false;
  eit->second -= count;
  if (eit->second == 0) pit->second.erase(eit);
  if (pit->second.empty()) pd.erase(pit);
  return true;
}

}  // namespace

BardenClassification barden_normal_form(const H2Data& h) {
  BardenClassification out;
  auto pd = primary_decomposition(h);

  if (h.barden_i == BardenIndex(0) || h.barden_i.is_infinite()) {
    if (h.barden_i.is_infinite() && h.rank == 0) {
      out.failure = "i(M) = inf requires an X_inf summand, but rank is 0";
      return out;
    }
    std::string why;
    auto half = halve(pd, why);
    if (!half) {
      out.failure = why;
      return out;
    }
    BardenName name;
    name.chain = invariant_factors(*half);
    if (h.barden_i.is_infinite()) {
      name.j = ExtendedIndex::infinity();
      name.r = h.rank - 1;
    } else {
      name.j = ExtendedIndex(0);
      name.r = h.rank;
    }
    out.candidates.push_back(std::move(name));
    return out;
  }

  int64_t i = h.barden_i.value();
  if (i < 0) {
    out.failure = "Barden invariant must be 0, a positive integer or inf";
    return out;
  }
  if (i >= 62) {
    out.failure = "Barden invariant too large for an X_j summand";
    return out;
  }

  std::vector<std::string> reasons;
  auto try_candidate = [&](int64_t j, int e, int64_t copies) {
    auto rest = pd;
    if (!remove_part(rest, 2, e, copies)) {
      std::ostringstream os;
      os << "X_" << j << " needs " << copies << " copies of Z_" << (int64_t{1} << e);
      reasons.push_back(os.str());
      return;
    }
    std::string why;
    auto half = halve(rest, why);
    if (!half) {
      reasons.push_back("after removing X_" + std::to_string(j) + ": " + why);
      return;
    }
    BardenName name;
    name.j = ExtendedIndex(j);
    name.chain = invariant_factors(*half);
    name.r = h.rank;
    out.candidates.push_back(std::move(name));
  };

  if (i == 1) try_candidate(-1, 1, 1);
  try_candidate(i, static_cast<int>(i), 2);
  if (out.candidates.empty()) {
    for (std::size_t k = 0; k < reasons.size(); ++k) out.failure += (k ? "; " : "") + reasons[k];
  }
  return out;
}

std::optional<int64_t> is_triangular(int64_t n) {
  if (n < 1) return std::nullopt;
  // (d-1)(d-2)/2 = n  <=>  (2d-3)^2 = 8n + 1
  int64_t disc = checked_add(checked_mul(8, n), 1);
  int64_t s = isqrt(disc);
  if (s * s != disc) return std::nullopt;
  return (s + 3) / 2;
}

namespace {

std::vector<PrimePowerPart> parts_of(const H2Data& h) {
  std::vector<PrimePowerPart> parts;
  for (const auto& [p, exps] : primary_decomposition(h))
    for (const auto& [e, c] : exps) parts.push_back({p, e, c});
  return parts;
}

void require_sphere(const H2Data& h, const char* what) {
  if (h.rank != 0)
    throw InputError(std::string(what) + " applies only to rational homology spheres (rank 0)");
}

}  // namespace

KollarResult kollar_obstruction(const H2Data& h) {
  require_sphere(h, "kollar_obstruction");
  KollarResult out;
  for (const auto& part : parts_of(h)) {
    bool member = part.count % 2 == 0 && is_triangular(part.count / 2).has_value();
    if (!member) out.outside.push_back(part);
  }
  out.pass = out.outside.size() <= 10;
  return out;
}

TStarResult tstar_check(const H2Data& h) {
  require_sphere(h, "tstar_check");
  TStarResult out;
  for (const auto& part : parts_of(h)) {
    std::optional<int64_t> d;
    if (part.count % 2 == 0) d = is_triangular(part.count / 2);
    if (!d) {
      out.failures.push_back({part, std::nullopt, "c/2 is not a triangular number"});
      continue;
    }
    if (*d % part.prime == 0) {
      std::ostringstream os;
      os << "degree " << *d << " is divisible by " << part.prime;
      out.failures.push_back({part, d, os.str()});
    }
  }
  out.pass = out.failures.empty();
  return out;
}

std::string torsion_to_string(std::span<const TorsionSummand> torsion) {
  if (torsion.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < torsion.size(); ++i)
    os << (i ? "," : "") << torsion[i].order << '^' << torsion[i].count;
  return os.str();
}

}  // namespace sbs
