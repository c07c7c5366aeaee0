#ifndef POLYRANK_MULTIPOLY_HPP
#define POLYRANK_MULTIPOLY_HPP

// Sparse multivariate polynomials over Q(i).  Terms live in a map keyed by
// exponent vector under the fixed grevlex order, so the leading term is the
// last entry.  Zero coefficients are never stored.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "polyrank/gaussian_rational.hpp"
#include "polyrank/monomial.hpp"

namespace polyrank {

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, GaussianRational, GrevlexLess>;

  MultiPoly() : nvars_(0) {}
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, GaussianRational c) {
    MultiPoly p(nvars);
    p.add_term(Monomial(nvars), std::move(c));
    return p;
  }

  static MultiPoly variable(std::size_t nvars, std::size_t i) {
    MultiPoly p(nvars);
    p.add_term(Monomial::var(nvars, i), GaussianRational(1));
    return p;
  }

  static MultiPoly term(Monomial m, GaussianRational c) {
    MultiPoly p(m.nvars());
    p.add_term(std::move(m), std::move(c));
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  void add_term(Monomial m, GaussianRational c) {
    if (c.is_zero()) return;
    if (m.nvars() != nvars_) throw std::invalid_argument("monomial arity");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  // Grevlex-largest term; polynomial must be nonzero.
  const std::pair<const Monomial, GaussianRational>& leading() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero");
    return *terms_.rbegin();
  }

  std::uint64_t total_degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
  }

  std::uint32_t max_var_degree(std::size_t i) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_)
      if (m.e[i] > d) d = m.e[i];
    return d;
  }

  GaussianRational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational() : it->second;
  }

  MultiPoly operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_arity(b);
    MultiPoly r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly& scale(const GaussianRational& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }

  friend MultiPoly operator*(const GaussianRational& c, MultiPoly p) {
    return p.scale(c);
  }

  MultiPoly pow(unsigned long e) const {
    MultiPoly acc = constant(nvars_, GaussianRational(1));
    MultiPoly base = *this;
    while (e) {
      if (e & 1) acc *= base;
      if ((e >>= 1)) base *= base;
    }
    return acc;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) {
    return !(a == b);
  }

  GaussianRational eval(const std::vector<GaussianRational>& x) const {
    if (x.size() != nvars_) throw std::invalid_argument("point arity");
    auto tables = power_tables(x);
    GaussianRational acc;
    for (const auto& [m, c] : terms_) {
      GaussianRational t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m.e[i]) t *= tables[i][m.e[i]];
      acc += t;
    }
    return acc;
  }

  MultiPoly diff(std::size_t i) const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m.e[i] == 0) continue;
      Monomial d = m;
      d.e[i] -= 1;
      r.add_term(std::move(d), GaussianRational(rat(m.e[i])) * c);
    }
    return r;
  }

  // Iterated partial derivative d^alpha.
  MultiPoly diff(const std::vector<std::uint32_t>& alpha) const {
    MultiPoly r = *this;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (std::uint32_t k = 0; k < alpha[i]; ++k) r = r.diff(i);
    return r;
  }

  // Substitute subst[i] for variable i; all subst share one target arity.
  MultiPoly compose(const std::vector<MultiPoly>& subst) const {
    if (subst.size() != nvars_) throw std::invalid_argument("subst arity");
    std::size_t target = subst.empty() ? 0 : subst[0].nvars();
    for (const auto& s : subst)
      if (s.nvars() != target) throw std::invalid_argument("subst arity");
    // Cache powers of each substituted polynomial up to its needed exponent.
    std::vector<std::vector<MultiPoly>> pw(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      std::uint32_t need = max_var_degree(i);
      pw[i].reserve(need + 1);
      pw[i].push_back(MultiPoly::constant(target, GaussianRational(1)));
      for (std::uint32_t k = 1; k <= need; ++k)
        pw[i].push_back(pw[i].back() * subst[i]);
    }
    MultiPoly r(target);
    for (const auto& [m, c] : terms_) {
      MultiPoly t = MultiPoly::constant(target, c);
      for (std::size_t i = 0; i < nvars_; ++i)
        if (m.e[i]) t *= pw[i][m.e[i]];
      r += t;
    }
    return r;
  }

  // f(center + w) as a polynomial in w (same variable count).
  MultiPoly recenter(const std::vector<GaussianRational>& center) const {
    if (center.size() != nvars_) throw std::invalid_argument("center arity");
    std::vector<MultiPoly> subst;
    subst.reserve(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      MultiPoly s = MultiPoly::variable(nvars_, i);
      s.add_term(Monomial(nvars_), center[i]);
      subst.push_back(std::move(s));
    }
    return compose(subst);
  }

  std::vector<std::vector<GaussianRational>> power_tables(
      const std::vector<GaussianRational>& x) const {
    std::vector<std::vector<GaussianRational>> tables(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      std::uint32_t need = max_var_degree(i);
      tables[i].reserve(need + 1);
      tables[i].emplace_back(1);
      for (std::uint32_t k = 1; k <= need; ++k)
        tables[i].push_back(tables[i].back() * x[i]);
    }
    return tables;
  }

 private:
  void check_arity(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("variable mismatch");
  }

  std::size_t nvars_;
  TermMap terms_;
};

// A polynomial map C^n -> C^p: one component polynomial per output.
struct PolyMap {
  std::vector<MultiPoly> components;

  PolyMap() = default;
  explicit PolyMap(std::vector<MultiPoly> comps)
      : components(std::move(comps)) {
    for (const auto& c : components)
      if (c.nvars() != components[0].nvars())
        throw std::invalid_argument("component variable mismatch");
  }

  std::size_t n() const {
    return components.empty() ? 0 : components[0].nvars();
  }
  std::size_t p() const { return components.size(); }

  std::vector<GaussianRational> eval(
      const std::vector<GaussianRational>& x) const {
    std::vector<GaussianRational> y;
    y.reserve(components.size());
    for (const auto& c : components) y.push_back(c.eval(x));
    return y;
  }

  PolyMap compose(const std::vector<MultiPoly>& subst) const {
    std::vector<MultiPoly> comps;
    comps.reserve(components.size());
    for (const auto& c : components) comps.push_back(c.compose(subst));
    return PolyMap(std::move(comps));
  }

  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.components == b.components;
  }
};

}  // namespace polyrank

#endif
