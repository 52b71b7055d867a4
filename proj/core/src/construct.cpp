#include "sbs/construct.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "sbs/diophantine.hpp"

namespace sbs {

namespace {

constexpr int64_t kMaxTarget = 256;
constexpr int kScaleCandidates = 64;

bool any_even(const std::vector<TorsionPart>& parts) {
  return std::any_of(parts.begin(), parts.end(), [](const TorsionPart& p) { return p.m % 2 == 0; });
}

int64_t lcm_of(const std::vector<TorsionPart>& parts) {
  int64_t m = 1;
  for (const auto& p : parts) m = lcm(m, p.m);
  return m;
}

std::string describe(const std::vector<TorsionPart>& parts) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < parts.size(); ++i)
    os << (i ? ", " : "") << "m=" << parts[i].m << " g=" << parts[i].g;
  os << ")";
  return os.str();
}

std::vector<TorsionSummand> torsion_of(const std::vector<TorsionPart>& parts) {
  std::vector<TorsionSummand> raw;
  for (const auto& p : parts) raw.push_back({p.m, checked_mul(2, p.g)});
  return normalize(raw);
}

// Attaches claims and re-verifies; any disagreement is a defect.
SeifertCertificate finish(SeifertCertificate cert, int64_t rank, const std::vector<TorsionSummand>& torsion,
                          bool spin, const char* who) {
  cert.claims.rank = rank;
  cert.claims.torsion = torsion;
  cert.claims.spin = spin;
  FiveManifoldInvariants inv;
  try {
    inv = invariants_of(cert);
  } catch (const VerificationError& e) {
    throw ConstructionFailed(std::string(who) + ": output failed verification: " + e.what());
  }
  H2Data expected = make_h2(rank, torsion, spin ? BardenIndex(0) : BardenIndex::infinity());
  std::string problem;
  if (!(inv.h2 == expected)) problem = "H_2 differs from the request";
  else if (inv.spin != spin) problem = "w_2 differs from the request";
  else if (!kahler_positive(cert)) problem = "c_1(M/X) is not ample";
  else if (!inv.pi1_abelian) problem = "pi_1 abelianness is not covered";
  if (!problem.empty()) throw ConstructionFailed(std::string(who) + ": " + problem);
  return cert;
}

struct Reduced {
  int64_t x;  // the free coefficient: beta_1 (sums1) or beta_1 - beta_2 (sums2)
  std::vector<int64_t> b;
};

// Solves m*x + sum coeffs_i b_i = T with x restricted to parity + step*Z.
std::optional<Reduced> solve_restricted(int64_t m, int64_t step, int64_t parity, const std::vector<int64_t>& coeffs,
                                        const std::vector<int64_t>& moduli, int64_t T) {
  int64_t rhs = checked_add(T, -checked_mul(m, parity));
  int64_t extra = checked_mul(m, step);
  if (coeffs.empty()) {
    if (rhs % extra != 0) return std::nullopt;
    return Reduced{parity + step * (rhs / extra), {}};
  }
  if (rhs == 0) return std::nullopt;
  auto out = solve_linear_combination(coeffs, moduli, extra, rhs);
  auto* s = std::get_if<DiophantineSolution>(&out);
  if (!s) return std::nullopt;
  return Reduced{checked_add(parity, checked_mul(step, s->beta)), s->b};
}

// The search shared by both rank-one constructions: for T = 1, 2, ... solve
// the difference relation a1 - a2 (sums2) or a1 (sums1) = T, then take the
// smallest beta_2 with a2 > 0 and gcd(T, a2) = 1 whose certificate has the
// requested spin type.
using Builder = std::function<SeifertCertificate(const Reduced&, int64_t beta2)>;

SeifertCertificate rank_one_search(const RankOneRequest& req, const std::vector<int64_t>& diff_coeffs,
                                   const std::vector<int64_t>& a2_coeffs, int64_t step, int64_t parity,
                                   const Builder& build, bool parity_law, const char* who) {
  const int64_t m = lcm_of(req.parts);
  std::vector<int64_t> moduli;
  for (const auto& p : req.parts) moduli.push_back(p.m);
  const auto torsion = torsion_of(req.parts);

  for (int64_t T = 1; T <= kMaxTarget; ++T) {
    auto sol = solve_restricted(m, step, parity, diff_coeffs, moduli, T);
    if (!sol) continue;
    int64_t s2 = 0;
    for (std::size_t i = 0; i < sol->b.size(); ++i) s2 = checked_add(s2, checked_mul(a2_coeffs[i], sol->b[i]));
    if (parity_law && floor_mod(s2, 2) != 1) {
      throw ConstructionFailed(std::string(who) + ": parity law fails, sum (g_i+1) M_i b_i = " +
                               std::to_string(s2) + " is even");
    }
    int64_t beta2 = floor_div(-s2, m) + 1;
    for (int64_t j = 0; j < T; ++j, ++beta2) {
      int64_t a2 = checked_add(checked_mul(m, beta2), s2);
      if (gcd(T, a2) != 1) continue;
      SeifertCertificate cert = build(*sol, beta2);
      if (!h1_vanishes(cert).vanishes() || !kahler_positive(cert)) continue;
      if (w2_vanishes(cert) != req.spin) continue;
      return finish(std::move(cert), 1, torsion, req.spin, who);
    }
  }
  throw ConstructionFailed(std::string(who) + ": no certificate found for " + describe(req.parts));
}

std::vector<Assumption> base_assumptions(bool has_divisors) {
  if (!has_divisors) return {};
  return {Assumption{AssumptionKind::SmoothTransverseRepresentatives, 0}};
}

}  // namespace

void check_rank_one_request(const RankOneRequest& req) {
  for (std::size_t i = 0; i < req.parts.size(); ++i) {
    const auto& p = req.parts[i];
    if (p.m < 2) throw PreconditionViolated("multiplicity m = " + std::to_string(p.m) + " is below 2");
    if (p.g < 1) throw PreconditionViolated("genus g = " + std::to_string(p.g) + " is below 1");
    for (std::size_t j = 0; j < i; ++j) {
      if (gcd(p.m, req.parts[j].m) != 1) {
        throw PreconditionViolated("multiplicities " + std::to_string(req.parts[j].m) + " and " +
                                   std::to_string(p.m) + " are not coprime");
      }
    }
  }
}

SeifertCertificate construct_sums1(const RankOneRequest& req) {
  check_rank_one_request(req);
  for (const auto& p : req.parts) {
    if (p.m % 2 == 0 && p.g % 2 != 0) {
      throw PreconditionViolated("sums1 needs even genus for even multiplicity, got m=" + std::to_string(p.m) +
                                 " g=" + std::to_string(p.g));
    }
  }
  const bool even = any_even(req.parts);
  if (!even && !req.spin) throw PreconditionViolated("sums1 with all multiplicities odd is always spin");

  const int64_t m = lcm_of(req.parts);
  const auto X = SurfaceLattice::cp1xcp1();
  std::vector<int64_t> c1, c2;
  std::vector<OrbitDivisor> divisors;
  for (const auto& p : req.parts) {
    int64_t M = m / p.m;
    c1.push_back(checked_mul(2, M));
    c2.push_back(checked_mul(p.g + 1, M));
    DivisorClass d({2, p.g + 1});
    divisors.push_back({d, p.m, 0, *X.adjunction_genus(d)});
  }
  // Even case: w_2(M) = 0 exactly when beta_1 is even.
  const int64_t step = even ? 2 : 1;
  const int64_t parity = (even && !req.spin) ? 1 : 0;
  Builder build = [&](const Reduced& r, int64_t beta2) {
    SeifertCertificate cert;
    cert.surface = X;
    cert.divisors = divisors;
    for (std::size_t i = 0; i < r.b.size(); ++i) cert.divisors[i].b = r.b[i];
    cert.bclass = DivisorClass({r.x, beta2});
    cert.assumptions = base_assumptions(!divisors.empty());
    return cert;
  };
  return rank_one_search(req, c1, c2, step, parity, build, even, "sums1");
}

SeifertCertificate construct_sums2(const RankOneRequest& req) {
  check_rank_one_request(req);
  for (const auto& p : req.parts) {
    if (p.m % 2 == 0 && p.g % 2 == 0) {
      throw PreconditionViolated("sums2 needs odd genus for even multiplicity, got m=" + std::to_string(p.m) +
                                 " g=" + std::to_string(p.g));
    }
  }
  const bool even = any_even(req.parts);
  if (!even && req.spin) throw PreconditionViolated("sums2 with all multiplicities odd is never spin");

  const int64_t m = lcm_of(req.parts);
  const auto X = SurfaceLattice::blowup_cp2(1);
  std::vector<int64_t> cdiff, c2;
  std::vector<OrbitDivisor> divisors;
  for (const auto& p : req.parts) {
    int64_t M = m / p.m;
    cdiff.push_back(checked_mul(2, M));
    c2.push_back(checked_mul(p.g, M));
    DivisorClass d({p.g + 2, -p.g});
    divisors.push_back({d, p.m, 0, *X.adjunction_genus(d)});
  }
  // Even case: w_2(M) = 0 exactly when beta_1 - beta_2 is even.
  const int64_t step = even ? 2 : 1;
  const int64_t parity = (even && !req.spin) ? 1 : 0;
  Builder build = [&](const Reduced& r, int64_t beta2) {
    SeifertCertificate cert;
    cert.surface = X;
    cert.divisors = divisors;
    for (std::size_t i = 0; i < r.b.size(); ++i) cert.divisors[i].b = r.b[i];
    cert.bclass = DivisorClass({checked_add(r.x, beta2), -beta2});
    cert.assumptions = base_assumptions(!divisors.empty());
    return cert;
  };
  return rank_one_search(req, cdiff, c2, step, parity, build, false, "sums2");
}

SeifertCertificate construct_rank_one(const RankOneRequest& req) {
  check_rank_one_request(req);
  auto it = std::find_if(req.parts.begin(), req.parts.end(), [](const TorsionPart& p) { return p.m % 2 == 0; });
  if (it == req.parts.end()) return req.spin ? construct_sums1(req) : construct_sums2(req);
  return it->g % 2 == 0 ? construct_sums1(req) : construct_sums2(req);
}

SeifertCertificate blowup_raise_rank(const SeifertCertificate& cert, bool spin_target) {
  FiveManifoldInvariants inv;
  try {
    inv = invariants_of(cert);
  } catch (const VerificationError& e) {
    throw PreconditionViolated(std::string("certificate does not verify: ") + e.what());
  }
  if (!kahler_positive(cert)) throw PreconditionViolated("certificate is not Kahler positive");
  if (!inv.pi1_abelian) throw PreconditionViolated("certificate does not cover pi_1 abelianness");
  if (!inv.spin && spin_target) {
    throw SpinTargetUnreachable(
        "a connected sum with a non-spin summand is non-spin; no blow-up reaches a spin total space");
  }

  const bool even = std::any_of(cert.divisors.begin(), cert.divisors.end(),
                                [](const OrbitDivisor& d) { return d.m % 2 == 0; });
  struct Option {
    bool e_divisor;
    int64_t alpha;
  };
  std::vector<Option> options;
  if (!even) options = {{false, 1}, {false, 2}, {true, 1}};
  else if (spin_target) options = {{true, 1}, {false, 1}, {false, 2}, {true, 2}};
  else options = {{false, 2}, {false, 1}, {true, 1}, {true, 2}};

  const SurfaceLattice X = cert.surface.blow_up();
  const int e_index = X.blowups();
  const DivisorClass E = X.exceptional(e_index);
  const std::size_t n = X.b2();
  const int64_t m = total_multiplicity(cert);

  const DivisorClass P = c1_over_m(cert).padded(n);
  for (const auto& opt : options) {
    const int64_t mhat = opt.e_divisor ? lcm(m, 2) : m;
    // c_1(M/X) of the result times mhat is N (mhat/m) P - c E, so ampleness
    // is monotone in N and the first ample scale is found by bisection.
    const int64_t c = checked_mul(opt.alpha, mhat) - (opt.e_divisor ? mhat / 2 : 0);
    auto ample_at = [&](int64_t N) {
      return X.is_ample(checked_mul(N, mhat / m) * P - c * E);
    };
    int64_t lo = 1, hi = 2;
    while (!ample_at(hi)) {
      lo = hi;
      hi = checked_mul(hi, 2);
    }
    while (hi - lo > 1) {
      int64_t mid = lo + (hi - lo) / 2;
      (ample_at(mid) ? hi : lo) = mid;
    }
    int tried = 0;
    for (int64_t N = std::max<int64_t>(hi, 2); tried < kScaleCandidates; ++N) {
      if (gcd(N, mhat) != 1) continue;
      ++tried;
      SeifertCertificate out;
      out.surface = X;
      out.bclass = N * cert.bclass.padded(n) - opt.alpha * E;
      for (const auto& d : cert.divisors) {
        OrbitDivisor nd{d.cls.padded(n), d.m, floor_mod(checked_mul(N, d.b), d.m), d.genus};
        int64_t t = (checked_mul(N, d.b) - nd.b) / d.m;
        out.bclass += t * nd.cls;
        out.divisors.push_back(std::move(nd));
      }
      if (opt.e_divisor) out.divisors.push_back({E, 2, 1, *X.adjunction_genus(E)});
      out.assumptions = cert.assumptions;
      if (!out.divisors.empty() &&
          std::none_of(out.assumptions.begin(), out.assumptions.end(), [](const Assumption& a) {
            return a.kind == AssumptionKind::SmoothTransverseRepresentatives;
          })) {
        out.assumptions.insert(out.assumptions.begin(), {AssumptionKind::SmoothTransverseRepresentatives, 0});
      }
      out.assumptions.push_back({AssumptionKind::BlowupCentreOffLocus, e_index});
      if (!kahler_positive(out)) continue;
      if (!h1_vanishes(out).vanishes()) continue;
      if (w2_vanishes(out) != spin_target) continue;
      return finish(std::move(out), checked_add(inv.h2.rank, 1), inv.h2.torsion, spin_target, "blowup");
    }
  }
  throw ConstructionFailed("blowup: no scale N gives the requested spin type");
}

SphereRequest make_sphere_request(const std::vector<TorsionPart>& parts) {
  SphereRequest req;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (p.m < 2) throw PreconditionViolated("multiplicity m = " + std::to_string(p.m) + " is below 2");
    for (std::size_t j = 0; j < i; ++j) {
      if (gcd(p.m, parts[j].m) != 1) {
        throw PreconditionViolated("multiplicities " + std::to_string(parts[j].m) + " and " +
                                   std::to_string(p.m) + " are not coprime");
      }
    }
    auto d = is_triangular(p.g);
    if (!d) throw PreconditionViolated("genus " + std::to_string(p.g) + " is not (d-1)(d-2)/2 for any d >= 3");
    if (gcd(p.m, *d) != 1) {
      throw PreconditionViolated("gcd(m, d) = gcd(" + std::to_string(p.m) + ", " + std::to_string(*d) +
                                 ") = " + std::to_string(gcd(p.m, *d)) + " != 1");
    }
    req.parts.push_back({p.m, p.g, *d});
  }
  return req;
}

SeifertCertificate construct_sphere(const SphereRequest& req) {
  std::vector<TorsionPart> parts;
  for (const auto& p : req.parts) {
    if (p.d < 3 || checked_mul(p.d - 1, p.d - 2) / 2 != p.g) {
      throw PreconditionViolated("degree " + std::to_string(p.d) + " does not match genus " + std::to_string(p.g));
    }
    parts.push_back({p.m, p.g});
  }
  make_sphere_request(parts);

  const int64_t m = lcm_of(parts);
  std::vector<int64_t> coeffs, moduli;
  int64_t content = m;
  for (const auto& p : req.parts) {
    coeffs.push_back(checked_mul(m / p.m, p.d));
    moduli.push_back(p.m);
    content = gcd(content, coeffs.back());
  }
  if (content != 1) throw ConstructionFailed("sphere: gcd(m, M_i d_i) = " + std::to_string(content));

  const auto X = SurfaceLattice::cp2();
  SeifertCertificate cert;
  cert.surface = X;
  int64_t beta = 1;
  if (!coeffs.empty()) {
    auto out = solve_linear_combination(coeffs, moduli, m, 1);
    const auto* s = std::get_if<DiophantineSolution>(&out);
    if (!s) throw ConstructionFailed("sphere: " + std::get<Unsolvable>(out).reason);
    beta = s->beta;
    for (std::size_t i = 0; i < req.parts.size(); ++i) {
      DivisorClass d({req.parts[i].d});
      cert.divisors.push_back({d, req.parts[i].m, s->b[i], *X.adjunction_genus(d)});
    }
  }
  cert.bclass = DivisorClass({beta});
  cert.assumptions = base_assumptions(!cert.divisors.empty());
  return finish(std::move(cert), 0, torsion_of(parts), true, "sphere");
}

SeifertCertificate construct_regular(int k, bool spin_target) {
  if (k < 0) throw PreconditionViolated("k must be non-negative");
  SeifertCertificate cert;
  if (k == 0) {
    if (!spin_target) throw PreconditionViolated("k = 0 admits no non-spin regular bundle: e = H is forced");
    cert.surface = SurfaceLattice::cp2();
    cert.bclass = DivisorClass({1});
  } else {
    cert.surface = SurfaceLattice::blowup_cp2(k);
    std::vector<int64_t> e(static_cast<std::size_t>(k) + 1, -1);
    e[0] = spin_target ? 2 * static_cast<int64_t>(k) + 1 : 2 * static_cast<int64_t>(k);
    cert.bclass = DivisorClass(std::move(e));
  }
  return finish(std::move(cert), k, {}, spin_target, "regular");
}

BardenName regular_diffeo_name(const SeifertCertificate& cert) {
  if (!cert.divisors.empty()) throw PreconditionViolated("regular_diffeo_name needs empty isotropy");
  FiveManifoldInvariants inv;
  try {
    inv = invariants_of(cert);
  } catch (const VerificationError& e) {
    throw PreconditionViolated(std::string("certificate does not verify: ") + e.what());
  }
  if (!kahler_positive(cert)) throw PreconditionViolated("Euler class is not ample");
  const int64_t b2 = static_cast<int64_t>(cert.surface.b2());
  BardenName name;
  if (inv.spin) {
    name.j = ExtendedIndex(0);
    name.r = b2 - 1;
  } else {
    if (b2 < 2) throw ConstructionFailed("non-spin regular bundle over a base with b2 < 2");
    name.j = ExtendedIndex::infinity();
    name.r = b2 - 2;
  }
  return name;
}

}  // namespace sbs
