#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "sbs/certificate_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sbs");
  std::ostringstream out, err;
  int code = sbs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("sbs-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
    ::unsetenv("SBS_OUT_DIR");
  }
  ~TempDir() {
    ::unsetenv("SBS_OUT_DIR");
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
  std::string read(const std::string& name) const {
    std::ifstream in(path / name);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
};

}  // namespace

TEST_CASE("decide writes a certificate that verifies") {
  TempDir tmp;
  auto r = run({"decide", "--rank", "1", "--torsion", "3^2,5^4", "--i", "0", "--out", tmp.file("c.sbs")});
  CHECK(r.code == sbs::cli::kExitDefinitive);
  CHECK(contains(r.out, "STATUS: ProvablyYes"));
  CHECK(contains(r.out, "TRACE:"));
  REQUIRE(fs::exists(tmp.file("c.sbs")));
  auto v = run({"verify", tmp.file("c.sbs")});
  CHECK(v.code == sbs::cli::kExitDefinitive);
  CHECK(contains(v.out, "STATUS: pass"));
  CHECK(contains(v.out, "TORSION: 3^2,5^4"));
  std::string text = tmp.read("c.sbs");
  CHECK(sbs::serialize(sbs::parse_certificate(text)) == text);
}

TEST_CASE("verify reports tampering") {
  TempDir tmp;
  REQUIRE(run({"construct", "--rank", "1", "--torsion", "3^2,5^4", "--out", tmp.file("c.sbs")}).code == 0);
  std::string text = tmp.read("c.sbs");
  auto at = text.find(" b ");
  REQUIRE(at != std::string::npos);
  auto end = text.find(' ', at + 3);
  tmp.write("range.sbs", text.substr(0, at + 3) + "3" + text.substr(end));
  auto v = run({"verify", tmp.file("range.sbs")});
  CHECK(v.code == sbs::cli::kExitError);
  CHECK(contains(v.out, "orbit-range"));

  auto claim = text.find("claim rank 1");
  REQUIRE(claim != std::string::npos);
  tmp.write("claim.sbs", text.substr(0, claim) + "claim rank 2" + text.substr(claim + 12));
  v = run({"verify", tmp.file("claim.sbs")});
  CHECK(v.code == sbs::cli::kExitError);
  CHECK(contains(v.out, "claim-rank"));

  tmp.write("junk.sbs", "sbs-certificate 1\nsurface CP2\nbasis H\nbclass x\nend\n");
  v = run({"verify", tmp.file("junk.sbs")});
  CHECK(v.code == sbs::cli::kExitError);
  CHECK(contains(v.err, "line 4"));

  CHECK(run({"verify", tmp.file("missing.sbs")}).code == sbs::cli::kExitError);
}

TEST_CASE("classify names Barden manifolds") {
  auto r = run({"classify", "--rank", "0", "--torsion", "2^1", "--i", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "CONNECTED_SUM: X_{-1}"));
  r = run({"classify", "--rank", "1", "--torsion", "7^2"});
  CHECK(contains(r.out, "NAME: M_{0;7;1}"));
  r = run({"classify", "--torsion", "3^3"});
  CHECK(contains(r.out, "STATUS: not-realizable"));
}

TEST_CASE("exit codes separate definitive answers from Unknown") {
  CHECK(run({"decide", "--torsion", "5^4"}).code == sbs::cli::kExitUnknown);
  CHECK(run({"decide", "--torsion", "2^1", "--i", "1"}).code == sbs::cli::kExitDefinitive);
  CHECK(run({"negative", "--torsion", "3^6"}).code == sbs::cli::kExitUnknown);
  CHECK(run({"negative", "--torsion", "7^6,11^2"}).code == sbs::cli::kExitDefinitive);
  CHECK(run({"bogus"}).code == sbs::cli::kExitError);
  CHECK(run({}).code == sbs::cli::kExitError);
}

TEST_CASE("certificates are inline without an output path") {
  TempDir tmp;
  auto r = run({"decide", "--torsion", "5^6"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "CERTIFICATE: inline"));
  auto begin = r.out.find("CERTIFICATE-BEGIN\n");
  auto end = r.out.find("CERTIFICATE-END");
  REQUIRE(begin != std::string::npos);
  REQUIRE(end != std::string::npos);
  std::string text = r.out.substr(begin + 18, end - begin - 18);
  CHECK(sbs::parse_certificate(text).surface.name() == "CP2");
}

TEST_CASE("SBS_OUT_DIR sets the output directory") {
  TempDir tmp;
  ::setenv("SBS_OUT_DIR", tmp.path.c_str(), 1);
  auto r = run({"regular", "--rank", "2"});
  CHECK(r.code == 0);
  CHECK(fs::exists(tmp.path / "certificate.sbs"));
  CHECK(contains(r.out, "CONNECTED_SUM"));
  r = run({"regular", "--rank", "2", "--i", "inf", "--out", "named.sbs"});
  CHECK(r.code == 0);
  CHECK(fs::exists(tmp.path / "named.sbs"));
  CHECK(run({"verify", tmp.file("named.sbs")}).code == 0);
}

TEST_CASE("query documents") {
  TempDir tmp;
  tmp.write("q.txt", "# query\nrank: 1\ntorsion: 3^2,5^4\nbarden_i: inf\nmode: decide\n");
  auto r = run({"decide", "--query", tmp.file("q.txt")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "BARDEN_I: inf"));
  CHECK(contains(r.out, "STATUS: ProvablyYes"));

  tmp.write("bad.txt", "rank: 1\ncolour: blue\n");
  r = run({"decide", "--query", tmp.file("bad.txt")});
  CHECK(r.code == sbs::cli::kExitError);
  CHECK(contains(r.err, "line 2, column 1"));
  CHECK(contains(r.err, "unknown field"));

  tmp.write("dup.txt", "rank: 1\n  rank: 2\n");
  r = run({"decide", "--query", tmp.file("dup.txt")});
  CHECK(contains(r.err, "line 2, column 3"));

  tmp.write("mode.txt", "mode: check\n");
  r = run({"decide", "--query", tmp.file("mode.txt")});
  CHECK(r.code == sbs::cli::kExitError);
  CHECK(contains(r.err, "line 1, column 7"));

  tmp.write("rank.txt", "rank: one\n");
  CHECK(contains(run({"decide", "--query", tmp.file("rank.txt")}).err, "line 1, column 7"));

  CHECK(run({"decide", "--query", tmp.file("q.txt"), "--rank", "2"}).code == sbs::cli::kExitError);
}

TEST_CASE("malformed options report positions") {
  auto r = run({"decide", "--torsion", "3^2,x"});
  CHECK(r.code == sbs::cli::kExitError);
  CHECK(contains(r.err, "column 5"));
  r = run({"decide", "--i", "sometimes"});
  CHECK(r.code == sbs::cli::kExitError);
  CHECK(contains(r.err, "barden index"));
  CHECK(run({"decide", "--rank", "-1"}).code == sbs::cli::kExitError);
}

TEST_CASE("check, kcontact and atlas") {
  auto r = run({"check", "--torsion", "3^2"});
  CHECK(contains(r.out, "TSTAR: fail T*_3"));
  CHECK(contains(r.out, "GK: pass"));
  r = run({"kcontact", "--torsion", "3^2"});
  CHECK(contains(r.out, "CLAUSE: BothBranches"));
  CHECK(contains(r.out, "BRANCH_GCD_D_PLUS_3: fail"));
  r = run({"kcontact", "--torsion", "2^6"});
  CHECK(contains(r.out, "STATUS: pass"));
  r = run({"atlas", "--max-m", "5", "--max-count", "4"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "ATLAS:"));
  CHECK(contains(r.out, "SHAPES:"));
  CHECK(run({"atlas", "--max-m", "1"}).code == sbs::cli::kExitError);
}

TEST_CASE("construct refuses unreachable requests") {
  CHECK(run({"construct", "--torsion", "3^2"}).code == sbs::cli::kExitError);
  CHECK(run({"construct", "--torsion", "2^2,4^2", "--rank", "1"}).code == sbs::cli::kExitError);
  CHECK(run({"construct", "--rank", "0", "--i", "inf"}).code == sbs::cli::kExitError);
  CHECK(run({"construct", "--rank", "3", "--torsion", "4^2", "--i", "inf"}).code == 0);
}

TEST_CASE("reports contain no floating-point numbers") {
  for (auto args : std::vector<std::vector<std::string>>{{"decide", "--rank", "2", "--torsion", "3^2,5^4"},
                                                          {"check", "--torsion", "5^6"},
                                                          {"atlas", "--max-m", "4"}}) {
    auto r = run(args);
    for (std::size_t i = 1; i + 1 < r.out.size(); ++i)
      CHECK_FALSE((r.out[i] == '.' && std::isdigit(static_cast<unsigned char>(r.out[i - 1])) &&
                   std::isdigit(static_cast<unsigned char>(r.out[i + 1]))));
  }
}
