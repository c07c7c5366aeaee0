#ifndef POLYRANK_BOUNDS_HPP
#define POLYRANK_BOUNDS_HPP

// Rational sup-norm and Lipschitz bounds for polynomials on polydiscs.
// Coefficient moduli are replaced by the |Re|+|Im| surrogate throughout, so
// every bound is an exact rational that dominates the true value.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "polyrank/multipoly.hpp"
#include "polyrank/polydisc.hpp"

namespace polyrank {

inline Rational rat_pow(const Rational& base, std::uint64_t e) {
  Rational acc(1), b = base;
  while (e) {
    if (e & 1) acc *= b;
    if ((e >>= 1)) b *= b;
  }
  return acc;
}

// Certified rational upper bound on sqrt(x), tight to ~2^-52 relative.  For
// any s > 0, (x/s + s)/2 >= sqrt(x) by AM-GM, so correctness never depends
// on floating point; a scaled double approximation only buys tightness.
// The seed is rounded to 26 bits to keep denominators small downstream.
inline Rational rat_sqrt_upper(const Rational& x) {
  if (x < 0) throw std::domain_error("sqrt of a negative rational");
  if (x == 0) return Rational(0);
  long e = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
  long k = e / 2;
  Rational y = x;  // y = x / 4^k lands in ~[1/4, 4]
  if (k > 0)
    mpq_div_2exp(y.get_mpq_t(), y.get_mpq_t(),
                 static_cast<mp_bitcnt_t>(2 * k));
  else if (k < 0)
    mpq_mul_2exp(y.get_mpq_t(), y.get_mpq_t(),
                 static_cast<mp_bitcnt_t>(-2 * k));
  const long scale = 1L << 26;
  long m = std::lround(std::sqrt(y.get_d()) * static_cast<double>(scale));
  Rational s = rat(m > 0 ? m : 1, scale);
  Rational u((y / s + s) / 2);
  if (k > 0)
    mpq_mul_2exp(u.get_mpq_t(), u.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
  else if (k < 0)
    mpq_div_2exp(u.get_mpq_t(), u.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
  return u;
}

// Rational upper bound on |z|, far tighter than |Re|+|Im| (which loses a
// factor sqrt(2) that powers of the result amplify badly).
inline Rational modulus_upper(const GaussianRational& z) {
  if (z.im() == 0) return rat_abs(z.re());
  if (z.re() == 0) return rat_abs(z.im());
  return rat_sqrt_upper(z.norm());
}

// sup over R of |f| is at most the termwise bound of f recentered at R's
// center: sum of |coeff|' * prod radius_i^alpha_i.  Recentring keeps bounds
// for peak monomials anchored at the center exact.
inline Rational sup_norm_bound(const MultiPoly& f, const Polydisc& R) {
  MultiPoly g = f.recenter(R.center);
  Rational acc(0);
  for (const auto& [m, c] : g.terms()) {
    Rational t = c.upper_abs();
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (m.e[i]) t *= rat_pow(R.radius[i], m.e[i]);
    acc += t;
  }
  return acc;
}

inline Rational sup_norm_bound(const PolyMap& f, const Polydisc& R) {
  Rational best(0);
  for (const auto& comp : f.components) {
    Rational b = sup_norm_bound(comp, R);
    if (b > best) best = b;
  }
  return best;
}

// L with |f(x)-f(y)| <= L * max_i |x_i-y_i| for x, y in R:
//   L = sum_alpha |a_alpha|' * (sum_i alpha_i) * Rhat^(|alpha|-1),
// where Rhat = max_i (|Re c_i| + |Im c_i| + radius_i) dominates every
// coordinate modulus on R.  Constant terms contribute nothing.
inline Rational lipschitz_bound(const MultiPoly& f, const Polydisc& R) {
  Rational rhat(0);
  for (std::size_t i = 0; i < R.n(); ++i) {
    Rational m = modulus_upper(R.center[i]) + R.radius[i];
    if (m > rhat) rhat = m;
  }
  Rational acc(0);
  for (const auto& [m, c] : f.terms()) {
    std::uint64_t deg = m.degree();
    if (deg == 0) continue;
    acc += c.upper_abs() * rat(static_cast<long>(deg)) * rat_pow(rhat, deg - 1);
  }
  return acc;
}

inline Rational lipschitz_bound(const PolyMap& f, const Polydisc& R) {
  Rational best(0);
  for (const auto& comp : f.components) {
    Rational b = lipschitz_bound(comp, R);
    if (b > best) best = b;
  }
  return best;
}

// Per-coordinate gradient bounds: entry j dominates sup |df/dz_j| over
// |z_i| <= U[i], termwise via |a_alpha|' * alpha_j * prod_l U_l^(alpha_l -
// [l==j]).  Weighting these against per-coordinate enclosure radii keeps
// variation bounds tight when the radii are very uneven.
inline std::vector<Rational> termwise_gradient_bounds(
    const MultiPoly& f, const std::vector<Rational>& U) {
  std::size_t n = f.nvars();
  std::vector<std::vector<Rational>> pw(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t need = f.max_var_degree(i);
    pw[i].reserve(need + 1);
    pw[i].emplace_back(1);
    for (std::uint32_t k = 1; k <= need; ++k)
      pw[i].push_back(Rational(pw[i].back() * U[i]));
  }
  std::vector<Rational> out(n, Rational(0));
  for (const auto& [m, c] : f.terms()) {
    if (m.is_constant()) continue;
    Rational cu = c.upper_abs();
    for (std::size_t j = 0; j < n; ++j) {
      if (m.e[j] == 0) continue;
      Rational part = rat(m.e[j]);
      for (std::size_t l = 0; l < n; ++l) {
        std::uint32_t e = m.e[l] - (l == j ? 1 : 0);
        if (e) part *= pw[l][e];
      }
      out[j] += cu * part;
    }
  }
  return out;
}

// Sum of the per-coordinate bounds: a max-norm Lipschitz bound whenever
// |z_i| <= U[i] for all i.
inline Rational termwise_gradient_bound(const MultiPoly& f,
                                        const std::vector<Rational>& U) {
  Rational acc(0);
  for (const auto& b : termwise_gradient_bounds(f, U)) acc += b;
  return acc;
}

}  // namespace polyrank

#endif
