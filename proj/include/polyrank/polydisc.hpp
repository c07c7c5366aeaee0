#ifndef POLYRANK_POLYDISC_HPP
#define POLYRANK_POLYDISC_HPP

// Closed polydiscs with Gaussian-rational centers and rational radii.
// Membership and inclusion tests compare squared moduli so everything stays
// rational.

#include <stdexcept>
#include <vector>

#include "polyrank/gaussian_rational.hpp"

namespace polyrank {

struct Polydisc {
  std::vector<GaussianRational> center;
  std::vector<Rational> radius;

  Polydisc() = default;
  Polydisc(std::vector<GaussianRational> c, std::vector<Rational> r)
      : center(std::move(c)), radius(std::move(r)) {
    if (center.size() != radius.size())
      throw std::invalid_argument("polydisc arity mismatch");
    for (const auto& rho : radius)
      if (rho <= 0) throw std::invalid_argument("polydisc radius must be > 0");
  }

  static Polydisc uniform(std::vector<GaussianRational> c, Rational rho) {
    std::vector<Rational> r(c.size(), rho);
    return Polydisc(std::move(c), std::move(r));
  }

  std::size_t n() const { return center.size(); }

  bool contains(const std::vector<GaussianRational>& x) const {
    if (x.size() != n()) throw std::invalid_argument("point arity");
    for (std::size_t i = 0; i < n(); ++i) {
      GaussianRational d = x[i] - center[i];
      if (d.norm() > radius[i] * radius[i]) return false;
    }
    return true;
  }

  bool contains(const Polydisc& k) const {
    if (k.n() != n()) throw std::invalid_argument("polydisc arity");
    for (std::size_t i = 0; i < n(); ++i) {
      Rational slack = radius[i] - k.radius[i];
      if (slack < 0) return false;
      GaussianRational d = k.center[i] - center[i];
      if (d.norm() > slack * slack) return false;
    }
    return true;
  }

  Polydisc inflated(const Rational& delta) const {
    Polydisc r = *this;
    for (auto& rho : r.radius) rho += delta;
    return r;
  }

  // Convex interpolation from K (j=0) to Q (j=stages); intermediate regions
  // are nested whenever K lies inside Q.
  static Polydisc interpolate(const Polydisc& k, const Polydisc& q, long j,
                              long stages) {
    if (k.n() != q.n()) throw std::invalid_argument("polydisc arity");
    if (stages <= 0 || j < 0 || j > stages)
      throw std::invalid_argument("interpolation index");
    Rational t = rat(j, stages);
    GaussianRational tg(t);
    Polydisc r = k;
    for (std::size_t i = 0; i < k.n(); ++i) {
      r.center[i] = k.center[i] + tg * (q.center[i] - k.center[i]);
      r.radius[i] = k.radius[i] + t * (q.radius[i] - k.radius[i]);
    }
    return r;
  }
};

}  // namespace polyrank

#endif
