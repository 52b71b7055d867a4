#include "sbs/seifert.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sbs {

std::string assumption_token(AssumptionKind kind) {
  switch (kind) {
    case AssumptionKind::SmoothTransverseRepresentatives: return "smooth-transverse-representatives";
    case AssumptionKind::BlowupCentreOffLocus: return "blowup-centre-off-locus";
  }
  return "unknown";
}

std::optional<AssumptionKind> parse_assumption_token(const std::string& token) {
  if (token == "smooth-transverse-representatives") return AssumptionKind::SmoothTransverseRepresentatives;
  if (token == "blowup-centre-off-locus") return AssumptionKind::BlowupCentreOffLocus;
  return std::nullopt;
}

namespace {

std::string label(std::size_t i) { return "D" + std::to_string(i + 1); }

bool has_assumption(const SeifertCertificate& cert, AssumptionKind kind, int argument = 0) {
  return std::any_of(cert.assumptions.begin(), cert.assumptions.end(), [&](const Assumption& a) {
    return a.kind == kind && (kind == AssumptionKind::SmoothTransverseRepresentatives || a.argument == argument);
  });
}

void require_valid(const SeifertCertificate& cert) {
  auto violations = validate(cert);
  if (violations.empty()) return;
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i)
    os << (i ? "; " : "") << violations[i].clause << ": " << violations[i].message;
  throw VerificationError(violations.front().clause, os.str());
}

void require_h1(const SeifertCertificate& cert) {
  auto report = h1_vanishes(cert);
  if (report.vanishes()) return;
  std::string clause = !report.restriction_surjective ? "h1-clause-2" : "h1-clause-3";
  throw VerificationError(clause, report.detail);
}

bool all_odd(const SeifertCertificate& cert) {
  return std::all_of(cert.divisors.begin(), cert.divisors.end(),
                     [](const OrbitDivisor& d) { return d.m % 2 != 0; });
}

}  // namespace

std::vector<Violation> validate(const SeifertCertificate& cert) {
  std::vector<Violation> out;
  const auto& X = cert.surface;
  if (X.hypothetical()) out.push_back({"lattice", "base surface " + X.name() + " is not constructible"});
  if (cert.bclass.size() != X.b2()) {
    out.push_back({"lattice", "bclass has " + std::to_string(cert.bclass.size()) + " coefficients, expected " +
                                  std::to_string(X.b2())});
  }
  std::vector<bool> usable(cert.divisors.size(), true);
  for (std::size_t i = 0; i < cert.divisors.size(); ++i) {
    const auto& d = cert.divisors[i];
    if (d.cls.size() != X.b2()) {
      out.push_back({"lattice", label(i) + " has " + std::to_string(d.cls.size()) + " coefficients, expected " +
                                    std::to_string(X.b2())});
      usable[i] = false;
    } else if (d.cls.is_zero()) {
      out.push_back({"divisor-zero", label(i) + " is the zero class"});
    }
    if (d.m < 2) out.push_back({"multiplicity", label(i) + " has multiplicity " + std::to_string(d.m) + " < 2"});
    if (d.b <= 0 || d.b >= d.m) {
      out.push_back({"orbit-range", label(i) + " has b = " + std::to_string(d.b) + " outside (0, " +
                                        std::to_string(d.m) + ")"});
    } else if (gcd(d.b, d.m) != 1) {
      out.push_back({"orbit-coprime", label(i) + " has gcd(b, m) = " + std::to_string(gcd(d.b, d.m))});
    }
    if (usable[i]) {
      auto g = X.adjunction_genus(d.cls);
      if (!g) {
        out.push_back({"genus-cache", label(i) + " has non-integral adjunction genus"});
      } else if (*g != d.genus) {
        out.push_back({"genus-cache", label(i) + " records genus " + std::to_string(d.genus) +
                                          " but adjunction gives " + std::to_string(*g)});
      }
    }
    if (d.genus < 0) out.push_back({"genus-negative", label(i) + " has negative genus"});
  }
  for (std::size_t i = 0; i < cert.divisors.size(); ++i) {
    for (std::size_t j = i + 1; j < cert.divisors.size(); ++j) {
      if (!usable[i] || !usable[j]) continue;
      const auto& a = cert.divisors[i];
      const auto& b = cert.divisors[j];
      if (X.intersect(a.cls, b.cls) != 0 && gcd(a.m, b.m) != 1) {
        out.push_back({"intersecting-coprime", label(i) + " and " + label(j) + " intersect but gcd(" +
                                                   std::to_string(a.m) + ", " + std::to_string(b.m) + ") != 1"});
      }
    }
  }
  if (!cert.divisors.empty() && !has_assumption(cert, AssumptionKind::SmoothTransverseRepresentatives))
    out.push_back({"assumptions", "isotropy divisors present without the smooth-transverse assumption"});
  for (const auto& a : cert.assumptions) {
    if (a.kind == AssumptionKind::BlowupCentreOffLocus && (a.argument < 1 || a.argument > X.blowups()))
      out.push_back({"assumptions", "blow-up assumption names missing class E" + std::to_string(a.argument)});
  }
  return out;
}

int64_t total_multiplicity(const SeifertCertificate& cert) {
  int64_t m = 1;
  for (const auto& d : cert.divisors) m = lcm(m, d.m);
  return m;
}

RationalClass c1_orbifold(const SeifertCertificate& cert) {
  require_valid(cert);
  RationalClass sum(cert.bclass, 1);
  for (const auto& d : cert.divisors) sum += RationalClass(d.b * d.cls, d.m);
  return sum;
}

DivisorClass c1_over_m(const SeifertCertificate& cert) {
  require_valid(cert);
  int64_t m = total_multiplicity(cert);
  DivisorClass out = m * cert.bclass;
  for (const auto& d : cert.divisors) out += checked_mul(d.b, m / d.m) * d.cls;
  return out;
}

H1Report h1_vanishes(const SeifertCertificate& cert) {
  require_valid(cert);
  H1Report report;
  std::ostringstream detail;

  std::set<int64_t> primes;
  for (const auto& d : cert.divisors)
    for (const auto& [p, e] : factorize(d.m)) primes.insert(p);
  for (int64_t p : primes) {
    std::vector<DivisorClass> classes;
    std::vector<std::size_t> which;
    for (std::size_t i = 0; i < cert.divisors.size(); ++i) {
      if (cert.divisors[i].m % p == 0) {
        classes.push_back(cert.divisors[i].cls);
        which.push_back(i);
      }
    }
    int rank = fp_rank(classes, p);
    if (rank != static_cast<int>(classes.size())) {
      report.restriction_surjective = false;
      detail << "condition 2 fails at p = " << p << ": classes {";
      for (std::size_t k = 0; k < which.size(); ++k) detail << (k ? "," : "") << label(which[k]);
      detail << "} have rank " << rank << " mod " << p << "; ";
    }
  }

  int64_t div = divisibility(c1_over_m(cert));
  if (div != 1) {
    report.c1_primitive = false;
    detail << "condition 3 fails: c1(M/m) has divisibility " << div << "; ";
  }
  report.detail = detail.str();
  return report;
}

TotalSpaceHomology h2_of_total_space(const SeifertCertificate& cert) {
  require_h1(cert);
  TotalSpaceHomology out;
  out.rank = static_cast<int64_t>(cert.surface.b2()) - 1;
  std::vector<TorsionSummand> raw;
  for (const auto& d : cert.divisors)
    if (d.genus > 0) raw.push_back({d.m, checked_mul(2, d.genus)});
  out.torsion = normalize(raw);
  return out;
}

std::vector<DivisorClass> pi_star_kernel(const SeifertCertificate& cert) {
  require_h1(cert);
  std::vector<DivisorClass> gens;
  if (all_odd(cert)) {
    DivisorClass v = cert.bclass;
    for (const auto& d : cert.divisors) v += d.b * d.cls;
    gens.push_back(std::move(v));
  } else {
    for (const auto& d : cert.divisors)
      if (d.m % 2 == 0) gens.push_back(d.cls);
  }
  return gens;
}

bool w2_vanishes(const SeifertCertificate& cert) {
  auto kernel = pi_star_kernel(cert);
  DivisorClass v = cert.surface.w2() + cert.bclass;
  for (const auto& d : cert.divisors) v += d.b * d.cls;
  return f2_span_membership(v, kernel);
}

std::optional<bool> w2_vanishes_by_pullback(const SeifertCertificate& cert) {
  if (!all_odd(cert)) return std::nullopt;
  return f2_span_membership(cert.surface.w2(), pi_star_kernel(cert));
}

bool kahler_positive(const SeifertCertificate& cert) {
  return cert.surface.is_ample(c1_orbifold(cert).numerator);
}

bool pi1_abelian_assumed(const SeifertCertificate& cert) {
  const auto& X = cert.surface;
  for (std::size_t i = 0; i < cert.divisors.size(); ++i) {
    const auto& d = cert.divisors[i];
    if (X.self_intersection(d.cls) > 0) continue;
    bool exceptional = false;
    for (int e = 1; e <= X.blowups(); ++e) {
      if (d.cls == X.exceptional(e) && has_assumption(cert, AssumptionKind::BlowupCentreOffLocus, e)) {
        exceptional = true;
        break;
      }
    }
    if (!exceptional) return false;
    for (std::size_t j = 0; j < cert.divisors.size(); ++j)
      if (j != i && X.intersect(d.cls, cert.divisors[j].cls) != 0) return false;
  }
  return true;
}

FiveManifoldInvariants invariants_of(const SeifertCertificate& cert) {
  require_valid(cert);
  require_h1(cert);
  FiveManifoldInvariants inv;
  inv.h1_zero = true;
  auto h2 = h2_of_total_space(cert);
  inv.spin = w2_vanishes(cert);
  inv.h2 = H2Data{h2.rank, h2.torsion, inv.spin ? BardenIndex(0) : BardenIndex::infinity()};
  inv.pi1_abelian = pi1_abelian_assumed(cert);
  return inv;
}

}  // namespace sbs
