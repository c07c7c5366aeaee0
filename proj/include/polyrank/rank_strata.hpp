#ifndef POLYRANK_RANK_STRATA_HPP
#define POLYRANK_RANK_STRATA_HPP

// Rank degeneracy loci of polynomial maps C^n -> C^p: symbolic Jacobians,
// minor ideals, their dimensions, pointwise ranks, and grid certificates
// that the rank stays >= r on a region.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polyrank/certify.hpp"
#include "polyrank/exact_linalg.hpp"
#include "polyrank/groebner.hpp"
#include "polyrank/multipoly.hpp"

namespace polyrank {

// p x n matrix of partials d f_i / d z_j.
inline std::vector<std::vector<MultiPoly>> jacobian(const PolyMap& f) {
  std::vector<std::vector<MultiPoly>> J(f.p());
  for (std::size_t i = 0; i < f.p(); ++i) {
    J[i].reserve(f.n());
    for (std::size_t j = 0; j < f.n(); ++j)
      J[i].push_back(f.components[i].diff(j));
  }
  return J;
}

inline QiMatrix jacobian_at(const PolyMap& f,
                            const std::vector<GaussianRational>& x) {
  QiMatrix J(f.p());
  for (std::size_t i = 0; i < f.p(); ++i) {
    J[i].reserve(f.n());
    for (std::size_t j = 0; j < f.n(); ++j)
      J[i].push_back(f.components[i].diff(j).eval(x));
  }
  return J;
}

inline std::size_t rank_at(const PolyMap& f,
                           const std::vector<GaussianRational>& x) {
  return rank_bareiss(jacobian_at(f, x));
}

namespace detail {

// Determinant of a small symbolic matrix by first-row cofactor expansion.
inline MultiPoly sym_det(const std::vector<std::vector<MultiPoly>>& M,
                         std::size_t nvars) {
  std::size_t k = M.size();
  if (k == 0) return MultiPoly::constant(nvars, GaussianRational(1));
  if (k == 1) return M[0][0];
  MultiPoly acc(nvars);
  for (std::size_t j = 0; j < k; ++j) {
    if (M[0][j].is_zero()) continue;
    std::vector<std::vector<MultiPoly>> sub(k - 1);
    for (std::size_t i = 1; i < k; ++i) {
      sub[i - 1].reserve(k - 1);
      for (std::size_t l = 0; l < k; ++l)
        if (l != j) sub[i - 1].push_back(M[i][l]);
    }
    MultiPoly term = M[0][j] * sym_det(sub, nvars);
    if (j % 2) acc -= term;
    else acc += term;
  }
  return acc;
}

inline void combinations(std::size_t total, std::size_t pick,
                         std::vector<std::vector<std::size_t>>& out) {
  if (pick > total) return;
  std::vector<std::size_t> cur(pick);
  for (std::size_t i = 0; i < pick; ++i) cur[i] = i;
  if (pick == 0) {
    out.push_back(cur);
    return;
  }
  for (;;) {
    out.push_back(cur);
    std::size_t i = pick;
    bool advanced = false;
    while (i-- > 0) {
      if (cur[i] + 1 <= total - pick + i) {
        ++cur[i];
        for (std::size_t l = i + 1; l < pick; ++l) cur[l] = cur[l - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

}  // namespace detail

// All r x r minors of the Jacobian, rows and columns in lexicographic order.
// The raw multiset is kept (repeats and all); deduplication is the basis
// computation's job.  r = 0 yields the single 0 x 0 minor, the constant 1.
inline std::vector<MultiPoly> rank_minors(const PolyMap& f, std::size_t r) {
  auto J = jacobian(f);
  std::vector<MultiPoly> minors;
  if (r > f.p() || r > f.n()) return minors;  // none: zero ideal
  std::vector<std::vector<std::size_t>> rowsets, colsets;
  detail::combinations(f.p(), r, rowsets);
  detail::combinations(f.n(), r, colsets);
  for (const auto& rs : rowsets) {
    for (const auto& cs : colsets) {
      std::vector<std::vector<MultiPoly>> sub(r);
      for (std::size_t i = 0; i < r; ++i) {
        sub[i].reserve(r);
        for (std::size_t j = 0; j < r; ++j) sub[i].push_back(J[rs[i]][cs[j]]);
      }
      minors.push_back(detail::sym_det(sub, f.n()));
    }
  }
  return minors;
}

// Ideal cutting out { z : rank J_f(z) <= max_rank }, generated by the
// (max_rank+1)-minors.
inline Ideal degeneracy_ideal(const PolyMap& f, std::size_t max_rank) {
  return Ideal(rank_minors(f, max_rank + 1), f.n());
}

inline long degeneracy_dimension(const PolyMap& f, std::size_t max_rank) {
  return degeneracy_ideal(f, max_rank).dimension();
}

// Codimension the locus { rank <= rmax } has for a generic map.
inline long generic_stratum_codim(std::size_t n, std::size_t p,
                                  std::size_t rmax) {
  if (rmax >= n || rmax >= p) return 0;
  return static_cast<long>((n - rmax) * (p - rmax));
}

// Generators with the same zero set as I but far better separation away
// from it: the reduced basis, univariate eliminants in each variable when
// they exist, and the original generators last.  Exact duplicates dropped.
inline std::vector<MultiPoly> enriched_nonvanishing_generators(
    const Ideal& I, std::uint32_t eliminant_degree_cap = 32) {
  std::vector<MultiPoly> out;
  auto push_unique = [&out](const MultiPoly& g) {
    if (g.is_zero()) return;
    for (const auto& h : out)
      if (h == g) return;
    out.push_back(g);
  };
  if (I.is_trivial()) {
    out.push_back(MultiPoly::constant(I.nvars(), GaussianRational(1)));
    return out;
  }
  for (std::size_t v = 0; v < I.nvars(); ++v)
    if (auto u = min_poly_in_variable(I, v, eliminant_degree_cap))
      push_unique(*u);
  for (const auto& g : I.groebner()) push_unique(g);
  for (const auto& g : I.generators()) push_unique(normalize_content(g));
  return out;
}

// Certificate that rank J_f >= r at Psi(z) for every z in R.  With the
// identity chain this is a plain lower rank bound on R itself.  Sound: the
// r-minors of J_f cannot all vanish where the rank is >= r, and the grid
// proves exactly that nonvanishing on the image.
inline Certificate certify_rank_at_least_chained(const PolyMap& f,
                                                 std::size_t r,
                                                 const ShearChain& chain,
                                                 const Polydisc& R,
                                                 int max_depth = 8) {
  if (r == 0) {
    Certificate c;
    c.status = CertStatus::Certified;
    c.reason = "rank-zero-vacuous";
    return c;
  }
  if (r > f.n() || r > f.p()) {
    Certificate c;
    c.reason = "rank-exceeds-matrix-size";
    return c;
  }
  Ideal I(rank_minors(f, r), f.n());
  return certify_chained_nonvanishing(enriched_nonvanishing_generators(I),
                                      chain, R, max_depth);
}

inline Certificate certify_rank_at_least(const PolyMap& f, std::size_t r,
                                         const Polydisc& R,
                                         int max_depth = 8) {
  return certify_rank_at_least_chained(f, r, ShearChain(f.n()), R, max_depth);
}

}  // namespace polyrank

#endif
