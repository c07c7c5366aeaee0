#ifndef POLYRANK_GROEBNER_HPP
#define POLYRANK_GROEBNER_HPP

// Groebner machinery over Q(i) in the fixed grevlex order: Buchberger with
// the coprime-leading-term criterion, reduced bases, the combinatorial
// dimension of the leading-term complement, and univariate eliminants found
// by linear algebra in the quotient.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "polyrank/exact_linalg.hpp"
#include "polyrank/multipoly.hpp"

namespace polyrank {

inline MultiPoly mono_mul(const MultiPoly& g, const Monomial& q,
                          const GaussianRational& c) {
  MultiPoly r(g.nvars());
  for (const auto& [m, a] : g.terms()) r.add_term(m * q, a * c);
  return r;
}

namespace detail {

// gcd in Z[i] (Euclidean with rounded quotients); nonzero inputs assumed
// handled by the caller starting from a = 0.
inline std::pair<mpz_class, mpz_class> gauss_gcd(mpz_class are, mpz_class aim,
                                                 mpz_class bre,
                                                 mpz_class bim) {
  auto round_div = [](const mpz_class& t, const mpz_class& n) {
    mpz_class q, num(2 * t + n), den(2 * n);
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
  };
  while (bre != 0 || bim != 0) {
    mpz_class n(bre * bre + bim * bim);
    mpz_class qre = round_div(mpz_class(are * bre + aim * bim), n);
    mpz_class qim = round_div(mpz_class(aim * bre - are * bim), n);
    mpz_class rre(are - (qre * bre - qim * bim));
    mpz_class rim(aim - (qre * bim + qim * bre));
    are = std::move(bre);
    aim = std::move(bim);
    bre = std::move(rre);
    bim = std::move(rim);
  }
  return {std::move(are), std::move(aim)};
}

}  // namespace detail

// Coefficients in Z[i] with content a unit and a canonical unit choice:
// leading coefficient rotated into {Re > 0} or {Re = 0, Im > 0}; among the
// (at most two) admissible rotations the lexicographically smaller value is
// taken.  The result depends only on the Q(i)-scalar orbit of f.
inline MultiPoly normalize_content(MultiPoly f) {
  if (f.is_zero()) return f;
  mpz_class D(1);
  for (const auto& [m, c] : f.terms()) {
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.re().get_den().get_mpz_t());
    mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), c.im().get_den().get_mpz_t());
  }
  mpz_class Gre(0), Gim(0);
  for (const auto& [m, c] : f.terms()) {
    mpz_class ar(c.re().get_num() * (D / c.re().get_den()));
    mpz_class ai(c.im().get_num() * (D / c.im().get_den()));
    std::tie(Gre, Gim) = detail::gauss_gcd(std::move(Gre), std::move(Gim),
                                           std::move(ar), std::move(ai));
  }
  f.scale(GaussianRational(Rational(D)) /
          GaussianRational(Rational(Gre), Rational(Gim)));
  const GaussianRational units[4] = {
      GaussianRational(1), GaussianRational(-1), GaussianRational::i(),
      -GaussianRational::i()};
  const GaussianRational lc = f.leading().second;
  bool found = false;
  GaussianRational best, pick;
  for (const auto& u : units) {
    GaussianRational w = u * lc;
    bool ok = w.re() > 0 || (w.re() == 0 && w.im() > 0);
    if (!ok) continue;
    if (!found || value_less(w, best)) {
      found = true;
      best = w;
      pick = u;
    }
  }
  f.scale(pick);
  return f;
}

// Remainder of full multivariate division by the basis, taken in order;
// deterministic for a fixed basis order.
inline MultiPoly normal_form(MultiPoly f, const std::vector<MultiPoly>& basis) {
  MultiPoly r(f.nvars());
  while (!f.is_zero()) {
    auto [lm, lc] = f.leading();
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      const auto& glead = g.leading();
      if (glead.first.divides(lm)) {
        f -= mono_mul(g, lm / glead.first, lc / glead.second);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      r.add_term(lm, lc);
      f.add_term(std::move(lm), -lc);
    }
  }
  return r;
}

// Reduced Groebner basis: monic, pairwise-irreducible, sorted by ascending
// leading monomial.  The zero ideal yields an empty basis.
inline std::vector<MultiPoly> buchberger(const std::vector<MultiPoly>& input) {
  std::vector<MultiPoly> basis;
  for (const auto& f : input)
    if (!f.is_zero()) basis.push_back(normalize_content(f));
  if (basis.empty()) return basis;

  // Pair queue keyed by (lcm degree, i, j): fixed, reproducible strategy.
  std::set<std::tuple<std::uint64_t, std::size_t, std::size_t>> queue;
  auto push_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      Monomial l =
          Monomial::lcm(basis[i].leading().first, basis[k].leading().first);
      queue.emplace(l.degree(), i, k);
    }
  };
  for (std::size_t k = 1; k < basis.size(); ++k) push_pairs(k);

  while (!queue.empty()) {
    auto [deg, i, j] = *queue.begin();
    queue.erase(queue.begin());
    const auto& fi = basis[i];
    const auto& fj = basis[j];
    const auto& mi = fi.leading().first;
    const auto& mj = fj.leading().first;
    Monomial l = Monomial::lcm(mi, mj);
    if (l == mi * mj) continue;  // coprime leading terms reduce to zero
    MultiPoly s = mono_mul(fi, l / mi, fi.leading().second.inverse()) -
                  mono_mul(fj, l / mj, fj.leading().second.inverse());
    MultiPoly h = normal_form(std::move(s), basis);
    if (h.is_zero()) continue;
    basis.push_back(normalize_content(std::move(h)));
    push_pairs(basis.size() - 1);
  }

  // Minimalize: drop any element whose leading monomial is divisible by
  // another surviving one (first occurrence wins on ties).
  std::vector<bool> keep(basis.size(), true);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size() && keep[i]; ++j) {
      if (i == j || !keep[j]) continue;
      const auto& mi = basis[i].leading().first;
      const auto& mj = basis[j].leading().first;
      if (mj.divides(mi) && (mj != mi || j < i)) keep[i] = false;
    }
  }
  std::vector<MultiPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (keep[i]) minimal.push_back(std::move(basis[i]));

  // Interreduce tails; leading terms are already pairwise irreducible.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<MultiPoly> others;
    others.reserve(minimal.size() - 1);
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    minimal[i] = normal_form(std::move(minimal[i]), others);
  }
  for (auto& g : minimal) g.scale(g.leading().second.inverse());
  std::sort(minimal.begin(), minimal.end(),
            [](const MultiPoly& a, const MultiPoly& b) {
              return grevlex_cmp(a.leading().first, b.leading().first) < 0;
            });
  return minimal;
}

// Krull dimension of V(gb) read off the leading-term ideal: the largest
// cardinality of a variable subset U such that no leading monomial is
// supported entirely inside U.  Empty variety gives -1; the zero ideal gives
// the full ambient dimension.
inline long ideal_dimension(const std::vector<MultiPoly>& gb, std::size_t n) {
  if (n >= 63) throw std::invalid_argument("too many variables");
  long best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool independent = true;
    for (const auto& g : gb) {
      const Monomial& lt = g.leading().first;
      bool escapes = false;
      for (std::size_t v = 0; v < n && !escapes; ++v)
        if (lt.e[v] > 0 && !(mask & (std::uint64_t{1} << v))) escapes = true;
      if (!escapes) {
        independent = false;
        break;
      }
    }
    if (independent) {
      long size = static_cast<long>(std::popcount(mask));
      if (size > best) best = size;
    }
  }
  return best;
}

class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(std::vector<MultiPoly> gens, std::size_t nvars_hint = 0)
      : nvars_(nvars_hint), gens_(std::move(gens)) {
    for (const auto& g : gens_) {
      if (nvars_ == 0) nvars_ = g.nvars();
      if (g.nvars() != nvars_)
        throw std::invalid_argument("ideal generator arity mismatch");
    }
  }

  std::size_t nvars() const { return nvars_; }
  const std::vector<MultiPoly>& generators() const { return gens_; }

  const std::vector<MultiPoly>& groebner() const {
    if (!gb_) gb_ = buchberger(gens_);
    return *gb_;
  }

  MultiPoly reduce(const MultiPoly& f) const { return normal_form(f, groebner()); }

  bool contains(const MultiPoly& f) const { return reduce(f).is_zero(); }

  // 1 (equivalently any unit) lies in the ideal: the variety is empty.
  bool is_trivial() const {
    const auto& gb = groebner();
    return gb.size() == 1 && gb[0].term_count() == 1 &&
           gb[0].leading().first.is_constant();
  }

  long dimension() const { return ideal_dimension(groebner(), nvars_); }

 private:
  std::size_t nvars_ = 0;
  std::vector<MultiPoly> gens_;
  mutable std::optional<std::vector<MultiPoly>> gb_;
};

// Generators of I*J; its variety is V(I) with V(J) joined.
inline Ideal ideal_product(const Ideal& a, const Ideal& b) {
  if (a.nvars() != b.nvars() && a.nvars() != 0 && b.nvars() != 0)
    throw std::invalid_argument("ideal arity mismatch");
  std::vector<MultiPoly> gens;
  gens.reserve(a.generators().size() * b.generators().size());
  for (const auto& f : a.generators())
    for (const auto& g : b.generators()) gens.push_back(f * g);
  return Ideal(std::move(gens), a.nvars() ? a.nvars() : b.nvars());
}

// Lowest-degree monic univariate polynomial in the given variable that lies
// in the ideal, if one exists with degree <= max_deg.  Found by tracking
// linear dependence of successive normal forms of powers; membership of the
// result is re-verified by reduction before returning.
inline std::optional<MultiPoly> min_poly_in_variable(const Ideal& I,
                                                     std::size_t var,
                                                     std::uint32_t max_deg = 32) {
  std::size_t n = I.nvars();
  if (var >= n) throw std::invalid_argument("variable out of range");
  PolySpan span;
  MultiPoly x = MultiPoly::variable(n, var);
  MultiPoly nf = I.reduce(MultiPoly::constant(n, GaussianRational(1)));
  for (std::uint32_t k = 0;; ++k) {
    if (auto dep = span.add(nf)) {
      MultiPoly u(n);
      u.add_term(Monomial::var(n, var, k), GaussianRational(1));
      for (std::uint32_t j = 0; j < dep->size(); ++j)
        u.add_term(Monomial::var(n, var, j), -(*dep)[j]);
      if (!I.reduce(u).is_zero())
        throw std::logic_error("eliminant failed membership re-check");
      return normalize_content(std::move(u));
    }
    if (k == max_deg) return std::nullopt;
    nf = I.reduce(x * nf);
  }
}

}  // namespace polyrank

#endif
