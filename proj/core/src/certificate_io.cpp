#include "sbs/certificate_io.hpp"

#include <cctype>
#include <iterator>
#include <sstream>

namespace sbs {

std::string ParseError::format(int line, int column, const std::string& message) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ", ";
  os << "column " << column << ": " << message;
  return os.str();
}

namespace {

void write_coeffs(std::ostream& os, const DivisorClass& d) {
  for (auto c : d.coeffs) os << ' ' << c;
}

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int64_t parse_int(const Token& t, int line) {
  const auto& s = t.text;
  std::size_t pos = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (pos == s.size()) throw ParseError(line, t.column, "expected an integer, found '" + s + "'");
  for (std::size_t i = pos; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError(line, t.column + static_cast<int>(i), "expected an integer, found '" + s + "'");
  }
  try {
    return std::stoll(s);
  } catch (const std::out_of_range&) {
    throw ParseError(line, t.column, "integer '" + s + "' out of range");
  }
}

void expect_keyword(const Token& t, const char* kw, int line) {
  if (t.text != kw) throw ParseError(line, t.column, std::string("expected '") + kw + "', found '" + t.text + "'");
}

}  // namespace

std::string serialize(const SeifertCertificate& cert) {
  std::ostringstream os;
  os << "sbs-certificate 1\n";
  os << "surface " << cert.surface.name() << '\n';
  os << "basis";
  for (const auto& l : cert.surface.basis_labels()) os << ' ' << l;
  os << '\n';
  for (const auto& d : cert.divisors) {
    os << "divisor";
    write_coeffs(os, d.cls);
    os << " m " << d.m << " b " << d.b << " genus " << d.genus << '\n';
  }
  os << "bclass";
  write_coeffs(os, cert.bclass);
  os << '\n';
  for (const auto& a : cert.assumptions) {
    os << "assumption " << assumption_token(a.kind);
    if (a.kind == AssumptionKind::BlowupCentreOffLocus) os << ' ' << a.argument;
    os << '\n';
  }
  if (cert.claims.rank) os << "claim rank " << *cert.claims.rank << '\n';
  if (cert.claims.torsion) os << "claim torsion " << torsion_to_string(*cert.claims.torsion) << '\n';
  if (cert.claims.spin) os << "claim spin " << (*cert.claims.spin ? "true" : "false") << '\n';
  os << "end\n";
  return os.str();
}

SeifertCertificate read_certificate(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_certificate(text);
}

SeifertCertificate parse_certificate(const std::string& text) {
  enum class Stage { Header, Surface, Basis, Divisors, Assumptions, Claims, Done };
  Stage stage = Stage::Header;
  SeifertCertificate cert;
  bool have_bclass = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto toks = tokenize(raw);
    if (toks.empty() || toks[0].text[0] == '#') continue;
    if (stage == Stage::Done) throw ParseError(lineno, toks[0].column, "content after 'end'");
    const auto& key = toks[0];
    auto want_args = [&](std::size_t n) {
      if (toks.size() != n + 1) {
        int col = toks.size() > n + 1 ? toks[n + 1].column : static_cast<int>(raw.size()) + 1;
        throw ParseError(lineno, col, "'" + key.text + "' expects " + std::to_string(n) + " argument(s)");
      }
    };

    switch (stage) {
      case Stage::Header:
        expect_keyword(key, "sbs-certificate", lineno);
        want_args(1);
        if (toks[1].text != "1") throw ParseError(lineno, toks[1].column, "unsupported format version '" + toks[1].text + "'");
        stage = Stage::Surface;
        continue;
      case Stage::Surface: {
        expect_keyword(key, "surface", lineno);
        want_args(1);
        auto s = parse_surface_name(toks[1].text);
        if (!s) throw ParseError(lineno, toks[1].column, "unknown surface '" + toks[1].text + "'");
        cert.surface = *s;
        stage = Stage::Basis;
        continue;
      }
      case Stage::Basis: {
        expect_keyword(key, "basis", lineno);
        const auto& labels = cert.surface.basis_labels();
        want_args(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i)
          if (toks[i + 1].text != labels[i])
            throw ParseError(lineno, toks[i + 1].column, "expected basis label '" + labels[i] + "'");
        stage = Stage::Divisors;
        continue;
      }
      default: break;
    }

    std::size_t n = cert.surface.b2();
    if (key.text == "divisor") {
      if (stage != Stage::Divisors) throw ParseError(lineno, key.column, "'divisor' out of order");
      want_args(n + 6);
      OrbitDivisor d;
      d.cls = DivisorClass::zero(n);
      for (std::size_t i = 0; i < n; ++i) d.cls[i] = parse_int(toks[i + 1], lineno);
      expect_keyword(toks[n + 1], "m", lineno);
      d.m = parse_int(toks[n + 2], lineno);
      expect_keyword(toks[n + 3], "b", lineno);
      d.b = parse_int(toks[n + 4], lineno);
      expect_keyword(toks[n + 5], "genus", lineno);
      d.genus = parse_int(toks[n + 6], lineno);
      cert.divisors.push_back(std::move(d));
    } else if (key.text == "bclass") {
      if (stage != Stage::Divisors) throw ParseError(lineno, key.column, "'bclass' out of order");
      want_args(n);
      cert.bclass = DivisorClass::zero(n);
      for (std::size_t i = 0; i < n; ++i) cert.bclass[i] = parse_int(toks[i + 1], lineno);
      have_bclass = true;
      stage = Stage::Assumptions;
    } else if (key.text == "assumption") {
      if (stage != Stage::Assumptions) throw ParseError(lineno, key.column, "'assumption' out of order");
      if (toks.size() < 2) throw ParseError(lineno, static_cast<int>(raw.size()) + 1, "missing assumption kind");
      auto kind = parse_assumption_token(toks[1].text);
      if (!kind) throw ParseError(lineno, toks[1].column, "unknown assumption '" + toks[1].text + "'");
      Assumption a{*kind, 0};
      if (*kind == AssumptionKind::BlowupCentreOffLocus) {
        want_args(2);
        a.argument = static_cast<int>(parse_int(toks[2], lineno));
      } else {
        want_args(1);
      }
      cert.assumptions.push_back(a);
    } else if (key.text == "claim") {
      if (stage != Stage::Assumptions && stage != Stage::Claims)
        throw ParseError(lineno, key.column, "'claim' out of order");
      stage = Stage::Claims;
      want_args(2);
      const auto& what = toks[1];
      if (what.text == "rank") {
        if (cert.claims.rank || cert.claims.torsion || cert.claims.spin)
          throw ParseError(lineno, what.column, "claim 'rank' repeated or out of order");
        cert.claims.rank = parse_int(toks[2], lineno);
      } else if (what.text == "torsion") {
        if (cert.claims.torsion || cert.claims.spin)
          throw ParseError(lineno, what.column, "claim 'torsion' repeated or out of order");
        try {
          cert.claims.torsion = normalize(parse_torsion(toks[2].text));
        } catch (const ParseError& e) {
          throw ParseError(lineno, toks[2].column + e.column() - 1, e.what());
        } catch (const InputError& e) {
          throw ParseError(lineno, toks[2].column, e.what());
        }
      } else if (what.text == "spin") {
        if (cert.claims.spin) throw ParseError(lineno, what.column, "claim 'spin' repeated");
        if (toks[2].text == "true") cert.claims.spin = true;
        else if (toks[2].text == "false") cert.claims.spin = false;
        else throw ParseError(lineno, toks[2].column, "expected 'true' or 'false'");
      } else {
        throw ParseError(lineno, what.column, "unknown claim '" + what.text + "'");
      }
    } else if (key.text == "end") {
      want_args(0);
      if (!have_bclass) throw ParseError(lineno, key.column, "missing 'bclass' before 'end'");
      stage = Stage::Done;
    } else {
      throw ParseError(lineno, key.column, "unknown field '" + key.text + "'");
    }
  }
  if (stage != Stage::Done) throw ParseError(lineno + 1, 1, "unexpected end of input (missing 'end')");
  return cert;
}

std::vector<TorsionSummand> parse_torsion(const std::string& text) {
  std::vector<TorsionSummand> out;
  auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return out;
  if (text.substr(first, text.find_last_not_of(" \t") - first + 1) == "0") return out;
  std::size_t i = 0;
  auto skip_blanks = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  auto read_number = [&](const char* what) -> int64_t {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) {
      throw ParseError(0, static_cast<int>(start) + 1, std::string("expected ") + what);
    }
    try {
      return std::stoll(text.substr(start, i - start));
    } catch (const std::out_of_range&) {
      throw ParseError(0, static_cast<int>(start) + 1, std::string(what) + " out of range");
    }
  };
  while (true) {
    skip_blanks();
    std::size_t order_col = i + 1;
    int64_t order = read_number("torsion order");
    int64_t count = 1;
    std::size_t count_col = i + 2;
    if (i < text.size() && text[i] == '^') {
      ++i;
      count = read_number("multiplicity");
    }
    if (order < 2) throw ParseError(0, static_cast<int>(order_col), "torsion order must be at least 2");
    if (count < 1) throw ParseError(0, static_cast<int>(count_col), "multiplicity must be at least 1");
    out.push_back({order, count});
    skip_blanks();
    if (i == text.size()) break;
    if (text[i] != ',') throw ParseError(0, static_cast<int>(i) + 1, std::string("unexpected character '") + text[i] + "'");
    ++i;
  }
  return out;
}

}  // namespace sbs
