#ifndef POLYRANK_SHEAR_HPP
#define POLYRANK_SHEAR_HPP

// Escape by shear automorphisms: find a finite chain of elementary shears,
// close to the identity on a proximity region, whose image of a larger box
// provably misses a given algebraic set.  Offsets are normalized peaks
// ((z_j - c_j)/rho_j)^M, tiny on the proximity region and rapidly growing
// outside it, which is what pushes the bad set off the box.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "polyrank/bounds.hpp"
#include "polyrank/certify.hpp"
#include "polyrank/errors.hpp"
#include "polyrank/groebner.hpp"
#include "polyrank/polydisc.hpp"
#include "polyrank/rank_strata.hpp"
#include "polyrank/rng.hpp"
#include "polyrank/shear_chain.hpp"

namespace polyrank {

namespace detail {

using cplx = std::complex<double>;

inline cplx eval_double(const MultiPoly& f, const std::vector<cplx>& z) {
  cplx acc(0.0);
  for (const auto& [m, c] : f.terms()) {
    cplx t(c.re().get_d(), c.im().get_d());
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::uint32_t k = 0; k < m.e[i]; ++k) t *= z[i];
    acc += t;
  }
  return acc;
}

// Durand-Kerner on a univariate polynomial given by ascending coefficients.
inline std::vector<cplx> poly_roots(std::vector<cplx> coeff) {
  while (!coeff.empty() && std::abs(coeff.back()) == 0.0) coeff.pop_back();
  if (coeff.size() < 2) return {};
  std::size_t d = coeff.size() - 1;
  for (auto& c : coeff) c /= coeff[d];
  std::vector<cplx> x(d);
  cplx w(0.4, 0.9), p(1.0);
  for (std::size_t k = 0; k < d; ++k) {
    p *= w;
    x[k] = p;
  }
  for (int it = 0; it < 200; ++it) {
    double moved = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      cplx v(0.0);
      for (std::size_t j = d + 1; j-- > 0;) v = v * x[k] + coeff[j];
      cplx den(1.0);
      for (std::size_t j = 0; j < d; ++j)
        if (j != k) den *= x[k] - x[j];
      if (std::abs(den) < 1e-30) continue;
      cplx step = v / den;
      x[k] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-13) break;
  }
  return x;
}

// Approximate common zeros of a system known to be finite: per-variable
// univariate members give candidate coordinates, the full system filters the
// cross product by residual.  Empty result means "no usable eliminants";
// callers must then skip the numeric shortcut, not conclude emptiness.
inline std::vector<std::vector<cplx>> approximate_zero_set(
    const std::vector<MultiPoly>& gens, std::size_t n) {
  std::vector<std::vector<cplx>> per_var(n);
  for (std::size_t j = 0; j < n; ++j) {
    const MultiPoly* best = nullptr;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      bool univ = true;
      for (const auto& [m, c] : g.terms())
        for (std::size_t i = 0; i < n && univ; ++i)
          if (i != j && m.e[i]) univ = false;
      if (!univ || g.max_var_degree(j) == 0) continue;
      if (!best || g.max_var_degree(j) < best->max_var_degree(j)) best = &g;
    }
    if (!best) return {};
    std::vector<cplx> coeff(best->max_var_degree(j) + 1, cplx(0.0));
    for (const auto& [m, c] : best->terms())
      coeff[m.e[j]] = cplx(c.re().get_d(), c.im().get_d());
    per_var[j] = poly_roots(std::move(coeff));
    if (per_var[j].empty()) return {};
  }

  std::vector<std::vector<cplx>> zeros;
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    std::vector<cplx> z(n);
    for (std::size_t j = 0; j < n; ++j) z[j] = per_var[j][pick[j]];
    // Backward-error residual: |g(z)| over the sum of term magnitudes, so
    // content-cleared integer coefficients of any size score alike.
    double resid = 0.0;
    for (const auto& g : gens) {
      cplx val(0.0);
      double mag = 0.0;
      for (const auto& [m, c] : g.terms()) {
        cplx t(c.re().get_d(), c.im().get_d());
        for (std::size_t i = 0; i < n; ++i)
          for (std::uint32_t k = 0; k < m.e[i]; ++k) t *= z[i];
        val += t;
        mag += std::abs(t);
      }
      if (mag > 0.0) resid = std::max(resid, std::abs(val) / mag);
    }
    if (resid < 1e-6) zeros.push_back(std::move(z));
    std::size_t j = 0;
    while (j < n && ++pick[j] == per_var[j].size()) pick[j++] = 0;
    if (j == n) break;
  }
  return zeros;
}

// Numeric screen: does the chain push every approximate zero clearly out of
// the box?  Pure double arithmetic; acceptance is still decided by the exact
// grid certificate.
inline bool chain_clears_zeros(const ShearChain& psi,
                               const std::vector<std::vector<cplx>>& zeros,
                               const Polydisc& box) {
  ShearChain inv = psi.inverse();
  for (const auto& z : zeros) {
    std::vector<cplx> w = z;
    for (const auto& s : inv.shears)
      w[s.target] += eval_double(s.offset, w);
    bool outside = false;
    for (std::size_t i = 0; i < w.size() && !outside; ++i) {
      cplx c(box.center[i].re().get_d(), box.center[i].im().get_d());
      if (std::abs(w[i] - c) > 1.05 * box.radius[i].get_d()) outside = true;
    }
    if (!outside) return false;
  }
  return true;
}

}  // namespace detail

// sup over R of |offset|, computed from the anchored coefficients, so peaks
// anchored at R's center are bounded without binomial loss.
inline Rational anchored_sup_bound(const ElementaryShear& s,
                                   const Polydisc& R) {
  Rational acc(0);
  for (const auto& [m, c] : s.anchored.terms()) {
    Rational t = c.upper_abs();
    for (std::size_t j = 0; j < m.nvars(); ++j) {
      if (!m.e[j]) continue;
      Rational U =
          Rational(modulus_upper(GaussianRational(R.center[j] - s.anchor[j])) +
                   R.radius[j]);
      t *= rat_pow(U, m.e[j]);
    }
    acc += t;
  }
  return acc;
}

// Bound on max_i sup_R |Psi(z)_i - z_i|.  Later shears are bounded on the
// region inflated by the deviations already incurred, so the bound is valid
// for the composed map.
inline Rational sup_deviation_bound(const ShearChain& psi, const Polydisc& R) {
  Polydisc cur = R;
  std::vector<Rational> dev(R.n(), Rational(0));
  for (const auto& s : psi.shears) {
    Rational sup = anchored_sup_bound(s, cur);
    dev[s.target] += sup;
    cur.radius[s.target] += sup;
  }
  Rational best(0);
  for (const auto& d : dev)
    if (d > best) best = d;
  return best;
}

struct EscapeCheck {
  Certificate cert;        // chain image of the box misses the set
  Rational deviation;      // sup |Psi - id| on the proximity region
  bool deviation_ok = false;

  bool accepted() const { return cert.certified() && deviation_ok; }
};

// Re-verification entry point: both halves of the escape contract from
// scratch for a given chain.
inline EscapeCheck verify_escape(const std::vector<MultiPoly>& gens,
                                 const ShearChain& psi, const Polydisc& box,
                                 const Polydisc& prox, const Rational& epsilon,
                                 int max_depth = 8) {
  EscapeCheck out;
  out.deviation = sup_deviation_bound(psi, prox);
  out.deviation_ok = out.deviation < epsilon;
  out.cert = certify_chained_nonvanishing(gens, psi, box, max_depth);
  return out;
}

struct EscapeResult {
  ShearChain chain;
  Certificate cert;
  Rational deviation_bound;
  std::size_t candidates_tried = 0;

  bool is_identity() const { return chain.empty(); }
};

// Coordinates z_j pinned by a degree-one univariate generator c1*z_j + c0
// whose pinned value provably lies outside prox's j-th projection.  A peak in
// such a coordinate is large everywhere on the set, which makes it the best
// shear source: the whole set gets displaced, not just a slice.
inline std::vector<std::size_t> escaped_pinned_sources(
    const std::vector<MultiPoly>& gens, const Polydisc& prox) {
  std::vector<bool> seen(prox.n(), false);
  std::vector<std::size_t> out;
  for (const auto& g : gens) {
    if (g.is_zero() || g.total_degree() != 1) continue;
    std::size_t var = g.nvars();  // sentinel: none found yet
    GaussianRational c1, c0;
    bool shape_ok = true;
    for (const auto& [m, c] : g.terms()) {
      if (m.degree() == 0) {
        c0 = c;
        continue;
      }
      std::size_t j = 0;
      while (!m.e[j]) ++j;
      if (var != g.nvars() && var != j) {
        shape_ok = false;  // linear in two different variables
        break;
      }
      var = j;
      c1 = c;
    }
    if (!shape_ok || var == g.nvars()) continue;
    GaussianRational v = (GaussianRational(0) - c0) / c1;
    if (!seen[var] &&
        GaussianRational(v - prox.center[var]).lower_abs() > prox.radius[var]) {
      seen[var] = true;
      out.push_back(var);
    }
  }
  return out;
}

// Search for a shear chain with Psi(box) certifiably missing V(sigma) and
// |Psi - id| < epsilon on prox.  Deterministic in the seed.  Candidates favor
// a single shear sourced in a coordinate where the set provably escapes
// prox's projection (when one is detectable); longer chains are drawn rarely
// and verified on a shallower grid, since each extra shear multiplies the
// enclosure stretch and with it the subdivision cost.  When `targets` is
// given, shears only move those coordinates.
inline EscapeResult find_escape(const Ideal& sigma, const Polydisc& box,
                                const Polydisc& prox, const Rational& epsilon,
                                std::uint64_t seed, int max_depth = 8,
                                std::size_t max_candidates = 64,
                                const std::vector<std::size_t>* targets = nullptr) {
  std::size_t n = sigma.nvars();
  if (box.n() != n || prox.n() != n)
    throw std::invalid_argument("region arity");
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be > 0");
  if (targets) {
    if (targets->empty()) throw std::invalid_argument("empty target set");
    for (auto t : *targets)
      if (t >= n) throw std::invalid_argument("shear target out of range");
  }
  if (n < 2)
    throw HypothesisViolation("escape needs at least two variables");
  if (sigma.dimension() > static_cast<long>(n) - 2)
    throw HypothesisViolation(
        "escaped set must have codimension at least two");

  std::vector<MultiPoly> gens = enriched_nonvanishing_generators(sigma);
  if (!certify_system_nonvanishing(gens, prox, max_depth).certified())
    throw HypothesisViolation(
        "could not certify that the set misses the proximity region");

  EscapeResult out;
  out.chain = ShearChain(n);

  // The box may already be clear; then the identity works.
  Certificate plain = certify_system_nonvanishing(gens, box, max_depth);
  if (plain.certified()) {
    out.cert = plain;
    out.deviation_bound = Rational(0);
    return out;
  }

  const std::vector<std::size_t> pinned = escaped_pinned_sources(gens, prox);
  // For finite sets the eliminants give all zeros to double precision; use
  // them to discard candidates that visibly leave some zero inside the box.
  const std::vector<std::vector<detail::cplx>> zeros =
      detail::approximate_zero_set(gens, n);
  SplitMix64 rng(seed);
  for (std::size_t cand = 1; cand <= max_candidates; ++cand) {
    SplitMix64 sub = rng.fork();
    std::uint64_t ld = sub.below(16);
    std::size_t shears = ld < 10 ? 1 : ld < 13 ? 2 : ld < 15 ? 3 : 4;
    ShearChain psi(n);
    Rational mag(epsilon / rat(2 * static_cast<long>(shears)));
    for (std::size_t s = 0; s < shears; ++s) {
      std::size_t target;
      if (targets) {
        target = (*targets)[sub.below(targets->size())];
      } else {
        // Push a coordinate the set does not already escape; pushing a pinned
        // one would waste the peak (the peak's own source can't be moved).
        std::vector<std::size_t> tgt;
        for (std::size_t j = 0; j < n; ++j)
          if (std::find(pinned.begin(), pinned.end(), j) == pinned.end())
            tgt.push_back(j);
        target = tgt.empty() ? static_cast<std::size_t>(sub.below(n))
                             : tgt[sub.below(tgt.size())];
      }
      std::vector<std::size_t> srcs;
      for (auto j : pinned)
        if (j != target) srcs.push_back(j);
      std::size_t source;
      if (!srcs.empty()) {
        source = srcs[sub.below(srcs.size())];
      } else {
        source = static_cast<std::size_t>(sub.below(n - 1));
        if (source >= target) ++source;
      }
      std::uint32_t M = 6 + static_cast<std::uint32_t>(sub.below(7));
      const GaussianRational units[4] = {
          GaussianRational(1), GaussianRational(-1), GaussianRational::i(),
          -GaussianRational::i()};
      GaussianRational c = units[sub.below(4)];
      if (sub.below(2)) c *= GaussianRational(rat(1, 2));
      c *= GaussianRational(mag);
      // c * ((z_src - prox_center)/prox_radius)^M, anchored at the center.
      MultiPoly base = MultiPoly::variable(n, source);
      base.add_term(Monomial(n), -prox.center[source]);
      MultiPoly offset = base.pow(M);
      offset.scale(c * GaussianRational(
                           rat_pow(Rational(1 / prox.radius[source]), M)));
      psi.push(ElementaryShear(target, std::move(offset), prox.center));
    }
    out.candidates_tried = cand;

    Rational dev = sup_deviation_bound(psi, prox);
    if (dev >= epsilon) continue;
    if (!zeros.empty() && !detail::chain_clears_zeros(psi, zeros, box))
      continue;
    int depth = max_depth;
    if (shears == 2 && depth > 6) depth = 6;
    if (shears > 2 && depth > 4) depth = 4;
    Certificate cert = certify_chained_nonvanishing(gens, psi, box, depth);
    if (cert.certified()) {
      out.chain = std::move(psi);
      out.cert = std::move(cert);
      out.deviation_bound = std::move(dev);
      return out;
    }
  }
  throw BudgetExhausted("no shear chain within the candidate budget");
}

}  // namespace polyrank

#endif
