#ifndef POLYRANK_IO_HPP
#define POLYRANK_IO_HPP

// Text formats.
//
// Polynomial grammar (one polynomial per line, variables z1..zn):
//   poly        := ['-'] term (('+' | '-') term)*
//   term        := factor ('*' factor)*
//   factor      := coefficient | variable
//   variable    := 'z' uint ['^' uint]
//   coefficient := integer | '(' rational [sign urational 'i'] ')'
//   rational    := ['-'] uint ['/' uint]
//
// Map files:   "vars:" header, "map:" line, then one component per line.
// Ideal files: "vars:" header, "gens:" line, then one generator per line.
// The vars header takes either a count ("vars: 2") or the variable names in
// order ("vars: z1 z2").
// Blank lines and lines starting with '#' are ignored.
//
// Complex scalars in flag arguments and reports: "a/b" or "a/b+c/di" with
// the denominator omitted when 1, e.g. "3/2", "-2", "0+1i", "1/2-3/4i".
//
// Region syntax: "c1,...,cn;r1,...,rn" with complex centers and rational
// radii.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyrank/groebner.hpp"
#include "polyrank/multipoly.hpp"
#include "polyrank/polydisc.hpp"

namespace polyrank {

struct ParseError : std::runtime_error {
  std::size_t line, col;
  ParseError(std::size_t line_, std::size_t col_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ": " + what),
        line(line_),
        col(col_) {}
};

namespace detail {

class LineParser {
 public:
  LineParser(const std::string& text, std::size_t line_no)
      : text_(text), line_(line_no) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) fail(std::string("expected ") + what);
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(line_, pos_ + 1, msg);
  }

  unsigned long parse_uint() {
    mpz_class z = parse_mpz_digits();
    if (!z.fits_ulong_p()) fail("number too large");
    return z.get_ui();
  }

  mpz_class parse_mpz_digits() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected digits");
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return mpz_class(text_.substr(start, pos_ - start));
  }

  // ['-'] uint ['/' uint]
  Rational parse_rational() {
    bool neg = accept('-');
    mpz_class num = parse_mpz_digits();
    mpz_class den(1);
    if (accept('/')) {
      den = parse_mpz_digits();
      if (den == 0) fail("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }

  // rational [sign urational 'i'] with 'i' also accepted directly after the
  // real part being absent is NOT allowed: the real part is mandatory.
  GaussianRational parse_complex() {
    Rational re = parse_rational();
    skip_ws();
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      bool neg = text_[pos_] == '-';
      std::size_t save = pos_;
      ++pos_;
      // Only an imaginary tail if it ends in 'i'; otherwise rewind (the
      // sign belongs to the next term of a polynomial).
      std::size_t probe = pos_;
      skip_ws();
      if (pos_ < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        Rational imag = parse_rational();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == 'i') {
          ++pos_;
          return GaussianRational(re, neg ? Rational(-imag) : imag);
        }
      }
      pos_ = save;
      (void)probe;
    }
    return GaussianRational(re);
  }

  std::size_t position() const { return pos_; }
  void set_position(std::size_t p) { pos_ = p; }
  const std::string& text() const { return text_; }
  std::size_t line_no() const { return line_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

class PolyParser {
 public:
  PolyParser(const std::string& text, std::size_t nvars, std::size_t line_no)
      : lp_(text, line_no), nvars_(nvars) {}

  MultiPoly parse() {
    MultiPoly acc(nvars_);
    bool negate = lp_.accept('-');
    acc += parse_term(negate);
    for (;;) {
      if (lp_.accept('+')) acc += parse_term(false);
      else if (lp_.accept('-')) acc += parse_term(true);
      else break;
    }
    if (!lp_.at_end()) lp_.fail("unexpected trailing input");
    return acc;
  }

 private:
  MultiPoly parse_term(bool negate) {
    MultiPoly t = parse_factor();
    while (lp_.accept('*')) t *= parse_factor();
    if (negate) t.scale(GaussianRational(-1));
    return t;
  }

  MultiPoly parse_factor() {
    char c = lp_.peek();
    if (c == 'z') return parse_variable();
    if (c == '(') {
      lp_.expect('(', "'('");
      GaussianRational v = lp_.parse_complex();
      lp_.expect(')', "')'");
      return MultiPoly::constant(nvars_, std::move(v));
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      bool neg = lp_.accept('-');
      mpz_class n = lp_.parse_mpz_digits();
      Rational q(n);
      return MultiPoly::constant(
          nvars_, GaussianRational(neg ? Rational(-q) : q));
    }
    lp_.fail("expected coefficient or variable");
  }

  MultiPoly parse_variable() {
    lp_.expect('z', "variable");
    unsigned long idx = lp_.parse_uint();
    if (idx < 1 || idx > nvars_)
      lp_.fail("variable index out of range (have " +
               std::to_string(nvars_) + " variables)");
    unsigned long e = 1;
    if (lp_.accept('^')) e = lp_.parse_uint();
    if (e > 1000000) lp_.fail("exponent too large");
    return MultiPoly::term(
        Monomial::var(nvars_, idx - 1, static_cast<std::uint32_t>(e)),
        GaussianRational(1));
  }

  LineParser lp_;
  std::size_t nvars_;
};

inline bool is_blank_or_comment(const std::string& s) {
  for (char c : s) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t') return false;
  }
  return true;
}

inline std::vector<std::pair<std::size_t, std::string>> content_lines(
    const std::string& content) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t line_no = 0;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!is_blank_or_comment(line)) out.emplace_back(line_no, line);
  }
  return out;
}

inline std::size_t parse_vars_header(const std::pair<std::size_t, std::string>& l) {
  LineParser lp(l.second, l.first);
  for (const char* c = "vars"; *c; ++c)
    if (!lp.accept(*c)) lp.fail("expected 'vars:' header");
  lp.expect(':', "':'");
  std::size_t n = 0;
  if (std::isdigit(static_cast<unsigned char>(lp.peek()))) {
    n = lp.parse_uint();
  } else {
    // Named form: the variables listed in order, z1 z2 ...
    while (!lp.at_end()) {
      lp.expect('z', "variable name");
      if (lp.parse_uint() != n + 1)
        lp.fail("variables must be z1, z2, ... in order");
      ++n;
    }
  }
  if (!lp.at_end()) lp.fail("unexpected trailing input");
  if (n == 0) lp.fail("need at least one variable");
  return n;
}

inline void parse_section_header(const std::pair<std::size_t, std::string>& l,
                                 const char* word) {
  LineParser lp(l.second, l.first);
  for (const char* c = word; *c; ++c)
    if (!lp.accept(*c))
      lp.fail(std::string("expected '") + word + ":' header");
  lp.expect(':', "':'");
  if (!lp.at_end()) lp.fail("unexpected trailing input");
}

}  // namespace detail

inline MultiPoly parse_poly(const std::string& line, std::size_t nvars,
                            std::size_t line_no = 1) {
  return detail::PolyParser(line, nvars, line_no).parse();
}

inline GaussianRational parse_complex_scalar(const std::string& s,
                                             std::size_t line_no = 1) {
  detail::LineParser lp(s, line_no);
  GaussianRational v = lp.parse_complex();
  if (!lp.at_end()) lp.fail("unexpected trailing input");
  return v;
}

inline Rational parse_rational_scalar(const std::string& s,
                                      std::size_t line_no = 1) {
  detail::LineParser lp(s, line_no);
  Rational v = lp.parse_rational();
  if (!lp.at_end()) lp.fail("unexpected trailing input");
  return v;
}

inline PolyMap parse_pmap(const std::string& content) {
  auto lines = detail::content_lines(content);
  if (lines.size() < 3) throw ParseError(1, 1, "map file too short");
  std::size_t n = detail::parse_vars_header(lines[0]);
  detail::parse_section_header(lines[1], "map");
  std::vector<MultiPoly> comps;
  for (std::size_t i = 2; i < lines.size(); ++i)
    comps.push_back(parse_poly(lines[i].second, n, lines[i].first));
  return PolyMap(std::move(comps));
}

inline std::vector<MultiPoly> parse_ideal_gens(const std::string& content,
                                               std::size_t* nvars_out) {
  auto lines = detail::content_lines(content);
  if (lines.size() < 2) throw ParseError(1, 1, "ideal file too short");
  std::size_t n = detail::parse_vars_header(lines[0]);
  detail::parse_section_header(lines[1], "gens");
  std::vector<MultiPoly> gens;
  for (std::size_t i = 2; i < lines.size(); ++i)
    gens.push_back(parse_poly(lines[i].second, n, lines[i].first));
  if (nvars_out) *nvars_out = n;
  return gens;
}

inline Ideal parse_ideal(const std::string& content) {
  std::size_t n = 0;
  auto gens = parse_ideal_gens(content, &n);
  return Ideal(std::move(gens), n);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline PolyMap load_pmap(const std::string& path) {
  return parse_pmap(read_file(path));
}

inline Ideal load_ideal(const std::string& path) {
  return parse_ideal(read_file(path));
}

// "c1,...,cn;r1,...,rn"
inline Polydisc parse_region(const std::string& s) {
  auto semi = s.find(';');
  if (semi == std::string::npos)
    throw ParseError(1, 1, "region needs ';' between centers and radii");
  auto split = [](const std::string& part) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
      auto comma = part.find(',', start);
      if (comma == std::string::npos) {
        out.push_back(part.substr(start));
        return out;
      }
      out.push_back(part.substr(start, comma - start));
      start = comma + 1;
    }
  };
  std::vector<GaussianRational> centers;
  for (const auto& c : split(s.substr(0, semi)))
    centers.push_back(parse_complex_scalar(c));
  std::vector<Rational> radii;
  for (const auto& r : split(s.substr(semi + 1)))
    radii.push_back(parse_rational_scalar(r));
  if (centers.size() != radii.size())
    throw ParseError(1, 1, "region center/radius counts differ");
  return Polydisc(std::move(centers), std::move(radii));
}

// ---- serialization ----

inline std::string rational_to_string(const Rational& q) {
  return q.get_str();  // "num/den", denominator omitted when 1
}

inline std::string complex_to_string(const GaussianRational& v) {
  std::string s = rational_to_string(v.re());
  if (v.im() != 0) {
    s += v.im() < 0 ? "-" : "+";
    s += rational_to_string(rat_abs(v.im()));
    s += "i";
  }
  return s;
}

inline std::string region_to_string(const Polydisc& R) {
  std::string s;
  for (std::size_t i = 0; i < R.n(); ++i) {
    if (i) s += ",";
    s += complex_to_string(R.center[i]);
  }
  s += ";";
  for (std::size_t i = 0; i < R.n(); ++i) {
    if (i) s += ",";
    s += rational_to_string(R.radius[i]);
  }
  return s;
}

inline std::string poly_to_string(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  // Leading term first: walk the grevlex map backwards.
  const auto& terms = f.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const Monomial& m = it->first;
    const GaussianRational& c = it->second;
    bool neg = c.re() < 0 || (c.re() == 0 && c.im() < 0);
    GaussianRational a = neg ? -c : c;
    std::string body;
    std::string coeff;
    if (a.is_real()) {
      if (a.re().get_den() == 1) coeff = a.re().get_str();
      else coeff = "(" + a.re().get_str() + ")";
    } else {
      coeff = "(" + a.re().get_str();
      coeff += a.im() < 0 ? "-" : "+";
      coeff += rat_abs(a.im()).get_str();
      coeff += "i)";
    }
    if (m.is_constant()) {
      body = coeff;
    } else {
      if (!a.is_one()) body = coeff + "*";
      bool first_var = true;
      for (std::size_t v = 0; v < m.nvars(); ++v) {
        if (!m.e[v]) continue;
        if (!first_var) body += "*";
        first_var = false;
        body += "z" + std::to_string(v + 1);
        if (m.e[v] > 1) body += "^" + std::to_string(m.e[v]);
      }
    }
    if (first) {
      out += neg ? "-" : "";
      out += body;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

inline std::string pmap_to_string(const PolyMap& f) {
  std::string s = "vars: " + std::to_string(f.n()) + "\nmap:\n";
  for (const auto& c : f.components) s += poly_to_string(c) + "\n";
  return s;
}

inline std::string ideal_to_string(const Ideal& I) {
  std::string s = "vars: " + std::to_string(I.nvars()) + "\ngens:\n";
  for (const auto& g : I.generators()) s += poly_to_string(g) + "\n";
  return s;
}

// ---- hashing ----

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

}  // namespace polyrank

#endif
