#ifndef POLYRANK_JETS_HPP
#define POLYRANK_JETS_HPP

// k-jets of polynomial maps and parametric families.  The central object is
// the linearization of the jet of a family with respect to polynomially
// reparameterized parameters, taken in the monomial basis centered at the
// jet point; it is block lower-triangular by construction and its row rank
// decides whether the family hits the jet space submersively.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polyrank/exact_linalg.hpp"
#include "polyrank/multipoly.hpp"

namespace polyrank {

// All multi-indices alpha in n variables with |alpha| <= k, ordered by total
// degree and lexicographically inside each degree.
inline std::vector<std::vector<std::uint32_t>> multiindices(std::size_t n,
                                                            std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur(n, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::uint32_t left) -> void {
    if (pos == n) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t v = 0; v <= left; ++v) {
      cur[pos] = v;
      self(self, pos + 1, left - v);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, k);
  std::sort(out.begin(), out.end(),
            [](const std::vector<std::uint32_t>& a,
               const std::vector<std::uint32_t>& b) {
              std::uint64_t da = 0, db = 0;
              for (auto x : a) da += x;
              for (auto x : b) db += x;
              if (da != db) return da < db;
              return a < b;
            });
  return out;
}

inline mpz_class mpz_binom(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline mpz_class multi_factorial(const std::vector<std::uint32_t>& a) {
  mpz_class r(1), f;
  for (auto x : a) {
    mpz_fac_ui(f.get_mpz_t(), x);
    r *= f;
  }
  return r;
}

inline mpz_class multi_binom(const std::vector<std::uint32_t>& a,
                             const std::vector<std::uint32_t>& b) {
  mpz_class r(1);
  for (std::size_t i = 0; i < a.size(); ++i) r *= mpz_binom(a[i], b[i]);
  return r;
}

// Dimension of the space of k-jets of maps C^n -> C^p: base point plus one
// fiber coordinate per component and multi-index of order <= k.
inline std::uint64_t jet_dimension(std::size_t n, std::size_t p,
                                   std::uint32_t k) {
  mpz_class fib = mpz_binom(static_cast<unsigned long>(n) + k,
                            static_cast<unsigned long>(n));
  mpz_class total(static_cast<unsigned long>(n) +
                  static_cast<unsigned long>(p) * fib);
  if (!total.fits_ulong_p()) throw std::overflow_error("jet dimension");
  return total.get_ui();
}

// Raw derivative jet of f at x: values d^alpha f_i(x), alpha outer in the
// multiindices() order, component i inner.
inline std::vector<GaussianRational> prolong(
    const PolyMap& f, const std::vector<GaussianRational>& x,
    std::uint32_t k) {
  auto alphas = multiindices(f.n(), k);
  std::vector<GaussianRational> jet;
  jet.reserve(alphas.size() * f.p());
  for (const auto& a : alphas)
    for (std::size_t i = 0; i < f.p(); ++i)
      jet.push_back(f.components[i].diff(a).eval(x));
  return jet;
}

// Reinterpret f over a larger variable list, variable j becoming j+offset.
inline MultiPoly embed_vars(const MultiPoly& f, std::size_t new_nvars,
                            std::size_t offset) {
  if (f.nvars() + offset > new_nvars)
    throw std::invalid_argument("embedding does not fit");
  MultiPoly r(new_nvars);
  for (const auto& [m, c] : f.terms()) {
    Monomial mm(new_nvars);
    for (std::size_t j = 0; j < m.nvars(); ++j) mm.e[j + offset] = m.e[j];
    r.add_term(std::move(mm), c);
  }
  return r;
}

// Polynomial family F(x, t) with n base variables followed by m parameters.
struct JetFamily {
  PolyMap F;  // components live in n + m variables
  std::size_t n = 0;
  std::size_t m = 0;

  JetFamily() = default;
  JetFamily(PolyMap family, std::size_t base_vars, std::size_t params)
      : F(std::move(family)), n(base_vars), m(params) {
    if (F.n() != n + m) throw std::invalid_argument("family arity");
  }

  // F(x, t) = f(x) + t, one translation parameter per component.
  static JetFamily affine_translation(const PolyMap& f) {
    std::size_t n = f.n(), p = f.p();
    std::vector<MultiPoly> comps;
    comps.reserve(p);
    for (std::size_t i = 0; i < p; ++i) {
      MultiPoly c = embed_vars(f.components[i], n + p, 0);
      c += MultiPoly::variable(n + p, n + i);
      comps.push_back(std::move(c));
    }
    return JetFamily(PolyMap(std::move(comps)), n, p);
  }

  // The member of the family at t = 0, as a map in the base variables only.
  PolyMap at_zero_parameters() const {
    std::vector<MultiPoly> subst;
    subst.reserve(n + m);
    for (std::size_t j = 0; j < n; ++j)
      subst.push_back(MultiPoly::variable(n, j));
    for (std::size_t j = 0; j < m; ++j)
      subst.push_back(MultiPoly(n));  // zero
    return F.compose(subst);
  }

  // G_nu = dF/dt_nu at t = 0, a map in the base variables.
  PolyMap parameter_direction(std::size_t nu) const {
    if (nu >= m) throw std::invalid_argument("parameter index");
    std::vector<MultiPoly> subst;
    subst.reserve(n + m);
    for (std::size_t j = 0; j < n; ++j)
      subst.push_back(MultiPoly::variable(n, j));
    for (std::size_t j = 0; j < m; ++j) subst.push_back(MultiPoly(n));
    std::vector<MultiPoly> comps;
    comps.reserve(F.p());
    for (const auto& c : F.components)
      comps.push_back(c.diff(n + nu).compose(subst));
    return PolyMap(std::move(comps));
  }
};

// Derivative at s = 0 of the k-jet at x0 of the enlarged family
//   F(x, t_nu = sum_beta s_{beta,nu} (x - x0)^beta),
// rows indexed by (alpha, i) and columns by (beta, nu), both multi-index
// outer in multiindices() order.  Entry:
//   binom(alpha, beta) * beta! * d^(alpha-beta) G_{i nu}(x0)  when beta <= alpha,
//   0 otherwise,
// so blocks with |beta| > |alpha| vanish and the diagonal blocks are
// alpha! times the plain parameter derivative at x0.
inline QiMatrix family_jet_linearization(const JetFamily& fam,
                                         const std::vector<GaussianRational>& x0,
                                         std::uint32_t k) {
  if (x0.size() != fam.n) throw std::invalid_argument("jet point arity");
  auto alphas = multiindices(fam.n, k);
  std::size_t p = fam.F.p();
  std::vector<PolyMap> G;
  G.reserve(fam.m);
  for (std::size_t nu = 0; nu < fam.m; ++nu)
    G.push_back(fam.parameter_direction(nu));

  QiMatrix M(alphas.size() * p);
  for (std::size_t ra = 0; ra < alphas.size(); ++ra) {
    const auto& alpha = alphas[ra];
    for (std::size_t i = 0; i < p; ++i) {
      auto& row = M[ra * p + i];
      row.reserve(alphas.size() * fam.m);
      for (std::size_t cb = 0; cb < alphas.size(); ++cb) {
        const auto& beta = alphas[cb];
        bool le = true;
        for (std::size_t j = 0; j < alpha.size() && le; ++j)
          le = beta[j] <= alpha[j];
        for (std::size_t nu = 0; nu < fam.m; ++nu) {
          if (!le) {
            row.emplace_back(0);
            continue;
          }
          std::vector<std::uint32_t> diffidx(alpha.size());
          for (std::size_t j = 0; j < alpha.size(); ++j)
            diffidx[j] = alpha[j] - beta[j];
          GaussianRational v = G[nu].components[i].diff(diffidx).eval(x0);
          Rational scale(mpz_class(multi_binom(alpha, beta) *
                                   multi_factorial(beta)));
          row.push_back(GaussianRational(scale) * v);
        }
      }
    }
  }
  return M;
}

// Full row rank of the linearization: the family moves every jet coordinate
// independently, i.e. the evaluation into the jet fiber is submersive.
inline bool verify_submersion(const QiMatrix& L,
                              std::vector<std::size_t>* pivot_cols = nullptr) {
  if (L.empty()) return true;
  return rank_gauss(L, pivot_cols) == L.size();
}

}  // namespace polyrank

#endif
