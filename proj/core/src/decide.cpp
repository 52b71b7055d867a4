#include "sbs/decide.hpp"

#include <sstream>

namespace sbs {

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::ProvablyYes: return "ProvablyYes";
    case VerdictStatus::ProvablyNo: return "ProvablyNo";
    case VerdictStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

Verdict& conclude(Verdict& v, VerdictStatus status, std::string finding, std::string reason) {
  v.status = status;
  v.finding = std::move(finding);
  v.reason = std::move(reason);
  return v;
}

// Independent re-check of a certificate against the query.
void accept_certificate(Verdict& v, SeifertCertificate cert, const H2Data& h, const std::string& how) {
  auto inv = invariants_of(cert);
  if (!(inv.h2 == h) || !kahler_positive(cert) || !inv.pi1_abelian)
    throw ConstructionFailed("certificate from " + how + " does not reproduce the query");
  v.trace.push_back({"verify", "pass", "H_2, w_2, H_1 = 0 and ampleness re-derived"});
  v.certificate = std::move(cert);
  conclude(v, VerdictStatus::ProvablyYes, how, "verified certificate");
}

bool has_odd_count(const H2Data& h) {
  for (const auto& [p, exps] : primary_decomposition(h))
    for (const auto& [e, c] : exps)
      if (c % 2 != 0) return true;
  return false;
}

// Parts for a rank-one request: the given blocks when their orders are
// pairwise coprime, otherwise one part per prime power.
std::optional<std::vector<TorsionPart>> rank_one_parts(const H2Data& h) {
  std::vector<TorsionPart> parts;
  bool direct = true;
  for (std::size_t i = 0; i < h.torsion.size() && direct; ++i) {
    const auto& s = h.torsion[i];
    if (s.count % 2 != 0) direct = false;
    for (std::size_t j = 0; j < i && direct; ++j)
      if (gcd(s.order, h.torsion[j].order) != 1) direct = false;
    parts.push_back({s.order, s.count / 2});
  }
  if (direct) return parts;
  return prime_power_parts(h.torsion);
}

std::string parts_string(const std::vector<TorsionPart>& parts) {
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i)
    os << (i ? ", " : "") << "(m=" << parts[i].m << ", g=" << parts[i].g << ")";
  return parts.empty() ? "none" : os.str();
}

struct SphereCheck {
  std::string clause;  // empty when every hypothesis holds
  std::string detail;
  std::vector<TorsionPart> parts;
};

// The sphere construction's hypotheses, in the order they are reported. A
// non-triangular part outranks a T*_p clause, and parts are complete
// whenever only T*_p fails.
SphereCheck sphere_hypotheses(const H2Data& h, bool need_spin) {
  SphereCheck out;
  if (need_spin && !(h.barden_i == BardenIndex(0))) {
    out.clause = "Spin";
    out.detail = "semi-regular structures with b2 = 0 are spin, but i = " + h.barden_i.to_string();
    return out;
  }
  auto pd = primary_decomposition(h);
  for (const auto& [p, exps] : pd) {
    if (exps.size() > 1) {
      out.clause = "NotCoprime";
      out.detail = "t(" + std::to_string(p) + ") = " + std::to_string(exps.size()) +
                   ": no pairwise coprime presentation";
      return out;
    }
  }
  for (const auto& [p, exps] : pd) {
    for (const auto& [e, c] : exps) {
      if (c % 2 != 0) {
        out.clause = "PairingFailure";
        out.detail = "c(" + std::to_string(p) + "^" + std::to_string(e) + ") = " + std::to_string(c) + " is odd";
        return out;
      }
    }
  }
  for (const auto& [p, exps] : pd) {
    auto [e, c] = *exps.begin();
    int64_t q = 1;
    for (int k = 0; k < e; ++k) q = checked_mul(q, p);
    out.parts.push_back({q, c / 2});
    auto d = is_triangular(c / 2);
    if (!d) {
      out.clause = "NonTriangular";
      out.detail = "g = " + std::to_string(c / 2) + " for m = " + std::to_string(q) + " is not triangular";
      return out;
    }
    if (*d % p == 0 && out.clause.empty()) {
      out.clause = "T*_" + std::to_string(p);
      out.detail = "gcd(" + std::to_string(q) + ", d = " + std::to_string(*d) + ") != 1";
    }
  }
  return out;
}

void require_rank_zero(const H2Data& h, const char* who) {
  if (h.rank != 0) throw InputError(std::string(who) + " needs rank 0, got " + std::to_string(h.rank));
}

}  // namespace

std::optional<std::vector<TorsionPart>> prime_power_parts(std::span<const TorsionSummand> torsion) {
  std::vector<TorsionPart> parts;
  for (const auto& [p, exps] : primary_decomposition(torsion)) {
    if (exps.size() != 1) return std::nullopt;
    auto [e, c] = *exps.begin();
    if (c % 2 != 0) return std::nullopt;
    int64_t q = 1;
    for (int k = 0; k < e; ++k) q = checked_mul(q, p);
    parts.push_back({q, c / 2});
  }
  return parts;
}

Verdict decide_semiregular_sphere(const H2Data& h) {
  require_rank_zero(h, "decide_semiregular_sphere");
  Verdict v;
  auto check = sphere_hypotheses(h, true);
  if (!check.clause.empty()) {
    v.trace.push_back({"sphere-hypotheses", "fail", check.clause + ": " + check.detail});
    return conclude(v, VerdictStatus::ProvablyNo, check.clause, check.detail);
  }
  v.trace.push_back({"sphere-hypotheses", "pass", parts_string(check.parts)});
  auto cert = construct_sphere(make_sphere_request(check.parts));
  v.trace.push_back({"construct-sphere", "pass", "divisors d_i H over CP2"});
  accept_certificate(v, std::move(cert), h, "sphere");
  return v;
}

Verdict decide_sasakian(const H2Data& h) {
  Verdict v;
  auto gk = gk_check(h);
  if (!gk.pass) {
    std::string clause = "GK-" + std::to_string(gk.clause);
    v.trace.push_back({"gk", "fail", clause + ": " + gk.detail});
    return conclude(v, VerdictStatus::ProvablyNo, clause, gk.detail);
  }
  v.trace.push_back({"gk", "pass", ""});

  auto barden = barden_normal_form(h);
  if (!barden.realizable()) {
    std::string clause = has_odd_count(h) ? "PairingFailure" : "NotRealizable";
    v.trace.push_back({"barden", "fail", barden.failure});
    return conclude(v, VerdictStatus::ProvablyNo, clause, barden.failure);
  }
  v.trace.push_back({"barden", "pass", barden.candidates.front().index_string()});
  const bool spin = h.barden_i == BardenIndex(0);

  if (h.torsion_free()) {
    auto cert = construct_regular(static_cast<int>(h.rank), spin);
    v.trace.push_back({"construct-regular", "pass", "e = " + cert.surface.name() + " Euler class"});
    accept_certificate(v, std::move(cert), h, "regular");
    return v;
  }

  if (h.rank >= 1) {
    auto t = t_invariants(h);
    if (t.t_max > 1) {
      std::string detail = "t_max = " + std::to_string(t.t_max) + "; the constructions need t(p) <= 1";
      v.trace.push_back({"rank-one-hypotheses", "fail", detail});
      return conclude(v, VerdictStatus::Unknown, "TorsionShape", detail);
    }
    auto parts = rank_one_parts(h);
    if (!parts) {
      v.trace.push_back({"rank-one-hypotheses", "fail", "torsion is not paired"});
      return conclude(v, VerdictStatus::Unknown, "PairingFailure", "torsion is not paired");
    }
    v.trace.push_back({"rank-one-hypotheses", "pass", parts_string(*parts)});
    auto cert = construct_rank_one(RankOneRequest{*parts, spin});
    v.trace.push_back({"construct-rank-one", "pass", "over " + cert.surface.name()});
    for (int64_t k = 1; k < h.rank; ++k) {
      cert = blowup_raise_rank(cert, spin);
      v.trace.push_back({"blowup-raise-rank", "pass", "rank " + std::to_string(k + 1)});
    }
    accept_certificate(v, std::move(cert), h, "rank-one");
    return v;
  }

  auto kollar = kollar_obstruction(h);
  if (!kollar.pass) {
    std::string detail = std::to_string(kollar.outside.size()) + " prime-power parts with c/2 not triangular";
    v.trace.push_back({"kollar", "fail", detail});
    return conclude(v, VerdictStatus::ProvablyNo, "Kollar-10", detail);
  }
  v.trace.push_back({"kollar", "pass", std::to_string(kollar.outside.size()) + " parts outside T"});

  auto check = sphere_hypotheses(h, true);
  if (!check.clause.empty()) {
    v.trace.push_back({"sphere-hypotheses", "fail", check.clause + ": " + check.detail});
    return conclude(v, VerdictStatus::Unknown, check.clause,
                    "no semi-regular structure (" + check.detail + "); other Sasakian structures are not decided");
  }
  v.trace.push_back({"sphere-hypotheses", "pass", parts_string(check.parts)});
  auto cert = construct_sphere(make_sphere_request(check.parts));
  v.trace.push_back({"construct-sphere", "pass", "divisors d_i H over CP2"});
  accept_certificate(v, std::move(cert), h, "sphere");
  return v;
}

bool positive_table_member(std::span<const TorsionSummand> torsion) {
  auto pd = primary_decomposition(torsion);
  if (pd.empty()) return true;  // Z_1^2
  bool square = true;
  for (const auto& [p, exps] : pd)
    if (exps.size() != 1 || exps.begin()->second != 2) square = false;
  if (square) return true;
  if (pd.size() != 1) return false;
  const auto& [p, exps] = *pd.begin();
  if (exps.size() != 1) return false;
  auto [e, c] = *exps.begin();
  if (p == 2 && e == 1) return c % 2 == 0;
  if (p == 5 && e == 1) return c == 4;
  if (p == 2 && e == 2) return c == 4;
  if (p == 3 && e == 1) return c == 4 || c == 6 || c == 8;
  return false;
}

Verdict decide_negative_sasakian(const H2Data& h) {
  require_rank_zero(h, "decide_negative_sasakian");
  Verdict v;
  if (positive_table_member(h.torsion)) {
    v.trace.push_back({"positive-table", "member", torsion_to_string(h.torsion)});
    return conclude(v, VerdictStatus::Unknown, kUnknownForNegative,
                    "torsion is in the positive table; negative structures are not decided here");
  }
  v.trace.push_back({"positive-table", "not-member", torsion_to_string(h.torsion)});
  auto sphere = decide_semiregular_sphere(h);
  v.trace.insert(v.trace.end(), sphere.trace.begin(), sphere.trace.end());
  if (sphere.status != VerdictStatus::ProvablyYes) {
    return conclude(v, VerdictStatus::Unknown, sphere.finding, "no semi-regular certificate: " + sphere.reason);
  }
  v.certificate = std::move(sphere.certificate);
  return conclude(v, VerdictStatus::ProvablyYes, "negative",
                  "semi-regular structure off the positive table, hence negative");
}

KContactResult kcontact_sphere_necessary(const H2Data& h) {
  require_rank_zero(h, "kcontact_sphere_necessary");
  KContactResult out;
  auto check = sphere_hypotheses(h, true);
  if (!check.clause.empty() && check.clause.rfind("T*_", 0) != 0) {
    out.clause = check.clause;
    out.detail = check.detail;
    return out;
  }
  out.coprime_branch = true;
  out.shifted_branch = true;
  std::ostringstream detail;
  for (const auto& part : check.parts) {
    int64_t d = *is_triangular(part.g);
    out.parts.push_back({part.m, part.g, d});
    int64_t g0 = gcd(part.m, d);
    int64_t g3 = gcd(part.m, d + 3);
    if (g0 != 1) out.coprime_branch = false;
    if (g3 != 1) out.shifted_branch = false;
    if (out.parts.size() > 1) detail << "; ";
    detail << "m=" << part.m << " d=" << d << " gcd(m,d)=" << g0 << " gcd(m,d+3)=" << g3;
  }
  out.pass = out.coprime_branch || out.shifted_branch;
  if (!out.pass) out.clause = "BothBranches";
  out.detail = detail.str();
  return out;
}

}  // namespace sbs
