#ifndef POLYRANK_SHEAR_CHAIN_HPP
#define POLYRANK_SHEAR_CHAIN_HPP

// Chains of elementary shears z_t -> z_t + g(other coordinates).  A chain is
// applied first-to-last.  Each shear keeps its offset recentred at an anchor
// point; bounds computed from the anchored coefficients stay tight for peak
// monomials (z_j - a)^M, where the plain termwise expansion would lose a
// factor ~2^M.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polyrank/bounds.hpp"
#include "polyrank/multipoly.hpp"

namespace polyrank {

struct ElementaryShear {
  std::size_t target = 0;
  MultiPoly offset;                      // g as a polynomial in all n vars
  std::vector<GaussianRational> anchor;  // expansion point for bounds
  MultiPoly anchored;                    // g(anchor + w), coefficients in w

  ElementaryShear() = default;

  ElementaryShear(std::size_t target_, MultiPoly offset_,
                  std::vector<GaussianRational> anchor_ = {})
      : target(target_), offset(std::move(offset_)), anchor(std::move(anchor_)) {
    if (anchor.empty())
      anchor.assign(offset.nvars(), GaussianRational(0));
    if (anchor.size() != offset.nvars())
      throw std::invalid_argument("shear anchor arity");
    if (target >= offset.nvars())
      throw std::invalid_argument("shear target out of range");
    if (offset.max_var_degree(target) != 0)
      throw std::invalid_argument("shear offset may not involve its target");
    anchored = offset.recenter(anchor);
  }

  GaussianRational offset_at(const std::vector<GaussianRational>& z) const {
    std::vector<GaussianRational> w(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) w[i] = z[i] - anchor[i];
    return anchored.eval(w);
  }

  // Per-coordinate gradient bounds of the offset, valid whenever
  // |z_i - anchor_i| <= U[i] for all i.
  std::vector<Rational> offset_gradient_bounds(
      const std::vector<Rational>& U) const {
    return termwise_gradient_bounds(anchored, U);
  }
};

struct ShearChain {
  std::size_t n = 0;
  std::vector<ElementaryShear> shears;  // applied in index order

  ShearChain() = default;
  explicit ShearChain(std::size_t nvars) : n(nvars) {}

  bool empty() const { return shears.empty(); }

  void push(ElementaryShear s) {
    if (s.offset.nvars() != n) throw std::invalid_argument("shear arity");
    shears.push_back(std::move(s));
  }

  std::vector<GaussianRational> apply(
      std::vector<GaussianRational> z) const {
    for (const auto& s : shears) z[s.target] += s.offset_at(z);
    return z;
  }

  // Components of the chain as polynomials in the source variables.
  std::vector<MultiPoly> expand() const {
    std::vector<MultiPoly> w;
    w.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      w.push_back(MultiPoly::variable(n, i));
    for (const auto& s : shears) w[s.target] += s.offset.compose(w);
    return w;
  }

  // Formal inverse: reversed chain with negated offsets.
  ShearChain inverse() const {
    ShearChain inv(n);
    for (auto it = shears.rbegin(); it != shears.rend(); ++it)
      inv.push(ElementaryShear(it->target, -it->offset, it->anchor));
    return inv;
  }
};

}  // namespace polyrank

#endif
