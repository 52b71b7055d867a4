#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "sbs/abelian.hpp"
#include "sbs/certificate_io.hpp"
#include "sbs/construct.hpp"
#include "sbs/decide.hpp"
#include "sbs/seifert.hpp"

namespace sbs::cli {

namespace {

namespace fs = std::filesystem;

struct QueryOptions {
  int64_t rank = 0;
  std::string torsion = "0";
  std::string barden_i = "0";
  std::string query_file;
  std::string out;
};

// "KEY: value" header followed by the trace table.
class Report {
 public:
  explicit Report(std::string command) { add("COMMAND", std::move(command)); }

  void add(std::string key, std::string value) { header_.emplace_back(std::move(key), std::move(value)); }
  void trace(const std::vector<TraceEntry>& t) { trace_.insert(trace_.end(), t.begin(), t.end()); }
  void attach(std::string text) { attachment_ = std::move(text); }

  void print(std::ostream& os) const {
    for (const auto& [k, v] : header_) os << k << ": " << v << '\n';
    if (!trace_.empty()) {
      std::size_t wc = 5, wo = 7;
      for (const auto& t : trace_) {
        wc = std::max(wc, t.check.size());
        wo = std::max(wo, t.outcome.size());
      }
      os << "TRACE:\n";
      os << "  " << std::left << std::setw(4) << "STEP" << ' ' << std::setw(static_cast<int>(wc)) << "CHECK" << ' '
         << std::setw(static_cast<int>(wo)) << "OUTCOME" << " DETAIL\n";
      for (std::size_t i = 0; i < trace_.size(); ++i) {
        const auto& t = trace_[i];
        os << "  " << std::left << std::setw(4) << (i + 1) << ' ' << std::setw(static_cast<int>(wc)) << t.check
           << ' ' << std::setw(static_cast<int>(wo)) << t.outcome << ' ' << t.detail << '\n';
      }
    }
    if (attachment_) os << *attachment_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> header_;
  std::vector<TraceEntry> trace_;
  std::optional<std::string> attachment_;
};

// Query documents: "rank: 1", "torsion: 3^2,5^4", "barden_i: 0",
// "mode: decide". Blank lines and '#' comments are skipped.
QueryOptions read_query(const std::string& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open query file '" + path + "'");
  QueryOptions q;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    auto colon = line.find(':', first);
    if (colon == std::string::npos) throw ParseError(lineno, static_cast<int>(first) + 1, "expected 'key: value'");
    std::string key = line.substr(first, colon - first);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    auto vstart = line.find_first_not_of(" \t", colon + 1);
    std::string value = vstart == std::string::npos ? "" : line.substr(vstart);
    while (!value.empty() && (value.back() == ' ' || value.back() == '\t')) value.pop_back();
    int vcol = vstart == std::string::npos ? static_cast<int>(line.size()) + 1 : static_cast<int>(vstart) + 1;
    if (!seen.insert(key).second) throw ParseError(lineno, static_cast<int>(first) + 1, "duplicate field '" + key + "'");
    if (key == "rank") {
      try {
        std::size_t used = 0;
        q.rank = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(lineno, vcol, "rank must be an integer, found '" + value + "'");
      }
    } else if (key == "torsion") {
      q.torsion = value;
    } else if (key == "barden_i" || key == "i") {
      q.barden_i = value;
    } else if (key == "mode") {
      if (value != command) {
        throw ParseError(lineno, vcol, "mode '" + value + "' does not match command '" + command + "'");
      }
    } else {
      throw ParseError(lineno, static_cast<int>(first) + 1, "unknown field '" + key + "'");
    }
  }
  return q;
}

H2Data to_h2(const QueryOptions& q) {
  std::vector<TorsionSummand> torsion;
  try {
    torsion = parse_torsion(q.torsion);
  } catch (const ParseError& e) {
    throw InputError(std::string("torsion: ") + e.what());
  }
  BardenIndex i;
  try {
    i = BardenIndex::parse(q.barden_i);
  } catch (const InputError& e) {
    throw InputError(std::string("barden index: ") + e.what());
  }
  return make_h2(q.rank, torsion, i);
}

void describe_query(Report& r, const H2Data& h) {
  r.add("RANK", std::to_string(h.rank));
  r.add("TORSION", torsion_to_string(h.torsion));
  r.add("BARDEN_I", h.barden_i.to_string());
}

std::optional<fs::path> certificate_path(const std::string& out) {
  const char* dir = std::getenv("SBS_OUT_DIR");
  if (!out.empty()) {
    fs::path p(out);
    if (dir && *dir && p.is_relative()) return fs::path(dir) / p;
    return p;
  }
  if (dir && *dir) return fs::path(dir) / "certificate.sbs";
  return std::nullopt;
}

void emit_certificate(Report& r, const SeifertCertificate& cert, const std::string& out) {
  std::string text = serialize(cert);
  if (auto path = certificate_path(out)) {
    std::ofstream f(*path, std::ios::binary);
    if (!f || !(f << text)) throw InputError("cannot write certificate to '" + path->string() + "'");
    r.add("CERTIFICATE", path->string());
  } else {
    r.add("CERTIFICATE", "inline");
    r.attach("CERTIFICATE-BEGIN\n" + text + "CERTIFICATE-END\n");
  }
}

int verdict_exit(VerdictStatus s) { return s == VerdictStatus::Unknown ? kExitUnknown : kExitDefinitive; }

int report_verdict(std::ostream& out, Report& r, const Verdict& v, const std::string& cert_out) {
  r.add("STATUS", to_string(v.status));
  r.add("FINDING", v.finding);
  r.add("REASON", v.reason);
  if (v.certificate) emit_certificate(r, *v.certificate, cert_out);
  r.trace(v.trace);
  r.print(out);
  return verdict_exit(v.status);
}

int cmd_classify(std::ostream& out, const H2Data& h) {
  Report r("classify");
  describe_query(r, h);
  auto c = barden_normal_form(h);
  if (!c.realizable()) {
    r.add("STATUS", "not-realizable");
    r.add("REASON", c.failure);
  } else {
    r.add("STATUS", c.ambiguous() ? "ambiguous" : "realizable");
    for (const auto& name : c.candidates) {
      r.add("NAME", name.index_string());
      r.add("CONNECTED_SUM", name.connected_sum());
    }
  }
  r.print(out);
  return kExitDefinitive;
}

int cmd_check(std::ostream& out, const H2Data& h) {
  Report r("check");
  describe_query(r, h);
  auto gk = gk_check(h);
  r.add("GK", gk.pass ? "pass" : "fail GK-" + std::to_string(gk.clause) + ": " + gk.detail);
  if (h.rank == 0) {
    auto k = kollar_obstruction(h);
    std::ostringstream os;
    os << (k.pass ? "pass" : "fail Kollar-10") << " (" << k.outside.size() << " parts outside T)";
    r.add("KOLLAR", os.str());
    auto t = tstar_check(h);
    if (t.pass) {
      r.add("TSTAR", "pass");
    } else {
      for (const auto& f : t.failures) {
        std::ostringstream fs;
        fs << "fail T*_" << f.part.prime << " at " << f.part.prime << '^' << f.part.exponent << ": " << f.reason;
        r.add("TSTAR", fs.str());
      }
    }
  } else {
    r.add("KOLLAR", "skip (rank > 0)");
    r.add("TSTAR", "skip (rank > 0)");
  }
  r.print(out);
  return kExitDefinitive;
}

int cmd_decide(std::ostream& out, const H2Data& h, const std::string& cert_out) {
  Report r("decide");
  describe_query(r, h);
  return report_verdict(out, r, decide_sasakian(h), cert_out);
}

// Runs the constructions directly, without the decision gates.
int cmd_construct(std::ostream& out, const H2Data& h, const std::string& cert_out) {
  Report r("construct");
  describe_query(r, h);
  if (!h.barden_i.is_infinite() && !(h.barden_i == BardenIndex(0)))
    throw PreconditionViolated("constructions produce i = 0 or inf only");
  const bool spin = h.barden_i == BardenIndex(0);
  SeifertCertificate cert;
  std::string how;
  if (h.torsion_free()) {
    cert = construct_regular(static_cast<int>(h.rank), spin);
    how = "regular";
  } else {
    auto parts = prime_power_parts(h.torsion);
    if (!parts) throw PreconditionViolated("torsion is not Z_{m_1}^{2g_1} + ... with pairwise coprime m_i");
    if (h.rank == 0) {
      if (!spin) throw PreconditionViolated("the sphere construction is spin only");
      cert = construct_sphere(make_sphere_request(*parts));
      how = "sphere";
    } else {
      cert = construct_rank_one(RankOneRequest{*parts, spin});
      for (int64_t k = 1; k < h.rank; ++k) cert = blowup_raise_rank(cert, spin);
      how = h.rank == 1 ? "rank-one" : "rank-one + " + std::to_string(h.rank - 1) + " blow-ups";
    }
  }
  r.add("STATUS", to_string(VerdictStatus::ProvablyYes));
  r.add("FINDING", how);
  emit_certificate(r, cert, cert_out);
  r.print(out);
  return kExitDefinitive;
}

int cmd_negative(std::ostream& out, const H2Data& h, const std::string& cert_out) {
  Report r("negative");
  describe_query(r, h);
  return report_verdict(out, r, decide_negative_sasakian(h), cert_out);
}

int cmd_kcontact(std::ostream& out, const H2Data& h) {
  Report r("kcontact");
  describe_query(r, h);
  auto k = kcontact_sphere_necessary(h);
  r.add("STATUS", k.pass ? "pass" : "fail");
  if (!k.clause.empty()) r.add("CLAUSE", k.clause);
  if (!k.parts.empty()) {
    r.add("BRANCH_GCD_D", k.coprime_branch ? "pass" : "fail");
    r.add("BRANCH_GCD_D_PLUS_3", k.shifted_branch ? "pass" : "fail");
  }
  r.add("DETAIL", k.detail);
  r.print(out);
  return kExitDefinitive;
}

int cmd_regular(std::ostream& out, const H2Data& h, const std::string& cert_out) {
  Report r("regular");
  describe_query(r, h);
  if (!h.torsion_free()) throw InputError("regular bundles have torsion-free H_2; got " + torsion_to_string(h.torsion));
  if (!h.barden_i.is_infinite() && !(h.barden_i == BardenIndex(0)))
    throw InputError("regular bundles have i = 0 or inf");
  const bool spin = h.barden_i == BardenIndex(0);
  if (h.rank == 0 && !spin) {
    r.add("STATUS", to_string(VerdictStatus::ProvablyNo));
    r.add("FINDING", "NotRealizable");
    r.add("REASON", "i = inf needs rank >= 1");
    r.print(out);
    return kExitDefinitive;
  }
  auto cert = construct_regular(static_cast<int>(h.rank), spin);
  auto name = regular_diffeo_name(cert);
  r.add("STATUS", to_string(VerdictStatus::ProvablyYes));
  r.add("NAME", name.index_string());
  r.add("CONNECTED_SUM", name.connected_sum());
  emit_certificate(r, cert, cert_out);
  r.print(out);
  return kExitDefinitive;
}

int cmd_verify(std::ostream& out, std::ostream& err, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open certificate '" + path + "'");
  SeifertCertificate cert;
  try {
    cert = read_certificate(in);
  } catch (const ParseError& e) {
    err << path << ": " << e.what() << '\n';
    return kExitError;
  }
  Report r("verify");
  r.add("FILE", path);
  r.add("SURFACE", cert.surface.name());
  auto violations = validate(cert);
  if (!violations.empty()) {
    r.add("STATUS", "fail");
    for (const auto& v : violations) r.add("VIOLATION", v.clause + ": " + v.message);
    r.print(out);
    return kExitError;
  }
  FiveManifoldInvariants inv;
  try {
    inv = invariants_of(cert);
  } catch (const VerificationError& e) {
    r.add("STATUS", "fail");
    r.add("VIOLATION", e.what());
    r.print(out);
    return kExitError;
  }
  std::vector<std::string> problems;
  r.add("RANK", std::to_string(inv.h2.rank));
  r.add("TORSION", torsion_to_string(inv.h2.torsion));
  r.add("SPIN", inv.spin ? "true" : "false");
  r.add("BARDEN_I", inv.h2.barden_i.to_string());
  bool ample = kahler_positive(cert);
  r.add("KAHLER_POSITIVE", ample ? "true" : "false");
  r.add("PI1_ABELIAN", inv.pi1_abelian ? "true" : "false");
  if (!ample) problems.push_back("kahler-positive: c_1(M/X) is not ample");
  if (!inv.pi1_abelian) problems.push_back("pi1-abelian: the abelianness criterion does not cover every divisor");
  const auto& c = cert.claims;
  if (c.rank && *c.rank != inv.h2.rank)
    problems.push_back("claim-rank: claimed " + std::to_string(*c.rank) + ", derived " + std::to_string(inv.h2.rank));
  if (c.torsion && !(make_h2(0, *c.torsion, BardenIndex(0)) == make_h2(0, inv.h2.torsion, BardenIndex(0)))) {
    problems.push_back("claim-torsion: claimed " + torsion_to_string(*c.torsion) + ", derived " +
                       torsion_to_string(inv.h2.torsion));
  }
  if (c.spin && *c.spin != inv.spin) {
    problems.push_back(std::string("claim-spin: claimed ") + (*c.spin ? "true" : "false") + ", derived " +
                       (inv.spin ? "true" : "false"));
  }
  r.add("STATUS", problems.empty() ? "pass" : "fail");
  for (const auto& p : problems) r.add("VIOLATION", p);
  r.print(out);
  return problems.empty() ? kExitDefinitive : kExitError;
}

// All paired torsion groups built from prime powers q <= max_m with
// sum of counts <= max_count, in a fixed order.
void enumerate_groups(const std::vector<int64_t>& qs, std::size_t idx, int64_t budget,
                      std::vector<TorsionSummand>& cur, std::vector<std::vector<TorsionSummand>>& outv) {
  if (idx == qs.size()) {
    outv.push_back(cur);
    return;
  }
  enumerate_groups(qs, idx + 1, budget, cur, outv);
  for (int64_t c = 2; c <= budget; c += 2) {
    cur.push_back({qs[idx], c});
    enumerate_groups(qs, idx + 1, budget - c, cur, outv);
    cur.pop_back();
  }
}

int cmd_atlas(std::ostream& out, int64_t rank, const std::string& barden_i, int64_t max_m, int64_t max_count) {
  if (max_m < 2) throw InputError("--max-m must be at least 2");
  if (max_count < 0) throw InputError("--max-count must be non-negative");
  if (rank < 0) throw InputError("--rank must be non-negative");
  auto i = BardenIndex::parse(barden_i);
  std::vector<int64_t> qs;
  for (int64_t q = 2; q <= max_m; ++q)
    if (factorize(q).size() == 1) qs.push_back(q);
  std::vector<std::vector<TorsionSummand>> groups;
  std::vector<TorsionSummand> cur;
  enumerate_groups(qs, 0, max_count, cur, groups);

  Report r("atlas");
  r.add("RANK", std::to_string(rank));
  r.add("BARDEN_I", i.to_string());
  r.add("MAX_M", std::to_string(max_m));
  r.add("MAX_COUNT", std::to_string(max_count));
  r.add("SHAPES", std::to_string(groups.size()));
  std::map<std::string, int64_t> tally;
  std::ostringstream rows;
  rows << "ATLAS:\n";
  for (const auto& g : groups) {
    auto h = make_h2(rank, g, i);
    auto v = decide_sasakian(h);
    tally[to_string(v.status)]++;
    rows << "  " << std::left << std::setw(24) << torsion_to_string(h.torsion) << ' ' << std::setw(11)
         << to_string(v.status) << ' ' << v.finding << '\n';
  }
  for (const auto& [k, n] : tally) r.add(k, std::to_string(n));
  r.attach(rows.str());
  r.print(out);
  return kExitDefinitive;
}

void add_query_options(CLI::App* sub, QueryOptions& q, bool with_out) {
  auto* rank = sub->add_option("--rank", q.rank, "free rank k of H_2");
  auto* tors = sub->add_option("--torsion", q.torsion, "torsion as order^count list, e.g. 3^2,5^4 (0 = none)");
  auto* bi = sub->add_option("--i", q.barden_i, "Barden invariant: 0, inf or a positive integer");
  auto* qf = sub->add_option("--query", q.query_file, "query document with rank/torsion/barden_i/mode fields");
  qf->excludes(rank)->excludes(tors)->excludes(bi);
  if (with_out) sub->add_option("--out", q.out, "certificate file (relative to SBS_OUT_DIR when set)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sasakian structures on simply connected 5-manifolds"};
  app.name(args.empty() ? "sbs" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);

  std::map<std::string, QueryOptions> opts;
  const std::vector<std::pair<std::string, std::string>> query_cmds = {
      {"classify", "Barden normal form of (rank, torsion, i)"},
      {"check", "G-K, Kollar and T*_p necessary conditions"},
      {"decide", "decide Sasakian existence, with a certificate when positive"},
      {"construct", "run the constructions directly and emit a certificate"},
      {"negative", "negative Sasakian structures on rational homology spheres"},
      {"kcontact", "semi-regular K-contact necessary condition (rank 0)"},
      {"regular", "regular circle bundle over CP2 # k conj(CP2)"},
  };
  for (const auto& [name, help] : query_cmds) {
    bool with_out = name == "decide" || name == "construct" || name == "negative" || name == "regular";
    add_query_options(app.add_subcommand(name, help), opts[name], with_out);
  }
  std::string verify_path;
  app.add_subcommand("verify", "re-verify a certificate file against its claims")
      ->add_option("file", verify_path, "certificate file")
      ->required();
  int64_t atlas_rank = 0, max_m = 20, max_count = 12;
  std::string atlas_i = "0";
  auto* atlas = app.add_subcommand("atlas", "tabulate verdicts over paired torsion shapes");
  atlas->add_option("--rank", atlas_rank, "free rank")->capture_default_str();
  atlas->add_option("--i", atlas_i, "Barden invariant")->capture_default_str();
  atlas->add_option("--max-m", max_m, "largest prime-power order")->capture_default_str();
  atlas->add_option("--max-count", max_count, "bound on the sum of counts")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitDefinitive : kExitError;
  }

  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "verify") return cmd_verify(out, err, verify_path);
    if (name == "atlas") return cmd_atlas(out, atlas_rank, atlas_i, max_m, max_count);
    QueryOptions q = opts[name];
    if (!q.query_file.empty()) {
      std::string cert_out = q.out;
      q = read_query(q.query_file, name);
      q.out = cert_out;
    }
    H2Data h = to_h2(q);
    if (name == "classify") return cmd_classify(out, h);
    if (name == "check") return cmd_check(out, h);
    if (name == "decide") return cmd_decide(out, h, q.out);
    if (name == "construct") return cmd_construct(out, h, q.out);
    if (name == "negative") return cmd_negative(out, h, q.out);
    if (name == "kcontact") return cmd_kcontact(out, h);
    if (name == "regular") return cmd_regular(out, h, q.out);
    err << "unknown command '" << name << "'\n";
    return kExitError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace sbs::cli
