#ifndef POLYRANK_SPRAY_P1_HPP
#define POLYRANK_SPRAY_P1_HPP

// Fiber spray over the projective line with a twist that damps the parameter
// direction at the marked point at infinity.  Two coordinate charts with
// transition u = 1/w; the spray is written down in chart 1 and transported
// to chart 2 by rational-function algebra, and all verification conditions
// are exact polynomial identities.
//
// Variables throughout: index 0 the chart coordinate, index 1 the parameter.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polyrank/multipoly.hpp"
#include "polyrank/rng.hpp"

namespace polyrank {

struct RationalFunc {
  MultiPoly num, den;

  RationalFunc() = default;
  RationalFunc(MultiPoly n, MultiPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::invalid_argument("zero denominator");
  }

  RationalFunc reciprocal() const { return RationalFunc(den, num); }

  RationalFunc operator*(const RationalFunc& o) const {
    return RationalFunc(num * o.num, den * o.den);
  }

  // Cancel the largest monomial dividing both numerator and denominator.
  RationalFunc monomial_reduced() const {
    std::size_t n = num.nvars();
    Monomial g(n);
    bool first = true;
    for (const auto* poly : {&num, &den}) {
      for (const auto& [m, c] : poly->terms()) {
        if (first) {
          g = m;
          first = false;
        } else {
          for (std::size_t v = 0; v < n; ++v)
            if (m.e[v] < g.e[v]) g.e[v] = m.e[v];
        }
      }
    }
    if (g.is_constant()) return *this;
    MultiPoly rn(n), rd(n);
    for (const auto& [m, c] : num.terms()) rn.add_term(m / g, c);
    for (const auto& [m, c] : den.terms()) rd.add_term(m / g, c);
    return RationalFunc(std::move(rn), std::move(rd));
  }
};

// Standard chart transition of the projective line, w -> 1/w, in the
// (coordinate, parameter) variable pair.
inline RationalFunc p1_transition() {
  return RationalFunc(MultiPoly::constant(2, GaussianRational(1)),
                      MultiPoly::variable(2, 0));
}

// Substitute var -> 1/var in a polynomial, clearing the pole: f becomes
// num / var^(top degree in var).
inline RationalFunc substitute_reciprocal(const MultiPoly& f, std::size_t var) {
  std::uint32_t top = f.max_var_degree(var);
  MultiPoly num(f.nvars());
  for (const auto& [m, c] : f.terms()) {
    Monomial mm = m;
    mm.e[var] = top - m.e[var];
    num.add_term(std::move(mm), c);
  }
  return RationalFunc(std::move(num),
                      MultiPoly::term(Monomial::var(f.nvars(), var, top),
                                      GaussianRational(1)));
}

// Twist m spray:
//   chart 1:  s1(u, t) = u + t * u^(-m)        stored as (u^(m+1) + t) / u^m
//   chart 2:  s2(w, t) = transported s1 under u = 1/w
//   twist factor: the parameter direction of s1 read in the chart-2
//   coordinate, tau(w) = w^m.
struct SprayP1 {
  std::uint32_t twist = 0;
  RationalFunc chart1;      // in (u, t)
  RationalFunc chart2;      // in (w, t)
  MultiPoly twist_factor;   // tau(w)
};

inline SprayP1 twisted_spray_p1(std::uint32_t m) {
  SprayP1 s;
  s.twist = m;
  MultiPoly num1(2);
  num1.add_term(Monomial::var(2, 0, m + 1), GaussianRational(1));
  num1.add_term(Monomial::var(2, 1), GaussianRational(1));
  s.chart1 = RationalFunc(
      num1, MultiPoly::term(Monomial::var(2, 0, m), GaussianRational(1)));
  // s2 = 1 / s1(1/w, t), each piece transported separately.
  RationalFunc tn = substitute_reciprocal(s.chart1.num, 0);
  RationalFunc td = substitute_reciprocal(s.chart1.den, 0);
  s.chart2 = (tn * td.reciprocal()).reciprocal().monomial_reduced();
  s.twist_factor = MultiPoly::term(Monomial::var(2, 0, m), GaussianRational(1));
  return s;
}

struct SprayChecks {
  bool fixes_zero_section = false;  // s(., 0) = id in both charts
  bool regular_at_marked = false;   // s2(0, t) = 0 with nonvanishing denom
  bool transport_identity = false;  // charts agree after cross-multiplying
  bool damped_at_marked = false;    // tau(0) = 0
  bool samples_agree = false;       // seeded spot checks of the transport

  bool all() const {
    return fixes_zero_section && regular_at_marked && transport_identity &&
           damped_at_marked && samples_agree;
  }
};

inline SprayChecks verify_spray_p1(std::uint32_t m, std::size_t samples = 8,
                                   std::uint64_t seed = 1) {
  SprayP1 s = twisted_spray_p1(m);
  SprayChecks out;

  auto at_zero_param = [](const MultiPoly& f) {
    std::vector<MultiPoly> subst{MultiPoly::variable(2, 0), MultiPoly(2)};
    return f.compose(subst);
  };
  auto at_zero_coord = [](const MultiPoly& f) {
    std::vector<MultiPoly> subst{MultiPoly(2), MultiPoly::variable(2, 1)};
    return f.compose(subst);
  };
  MultiPoly x = MultiPoly::variable(2, 0);

  // (a) zero section: num(x, 0) = x * den(x, 0) in both charts.
  out.fixes_zero_section =
      at_zero_param(s.chart1.num) == x * at_zero_param(s.chart1.den) &&
      at_zero_param(s.chart2.num) == x * at_zero_param(s.chart2.den);

  // (b) the marked point w = 0 stays fixed for every parameter value, and
  // the chart-2 denominator does not vanish there.
  out.regular_at_marked = at_zero_coord(s.chart2.num).is_zero() &&
                          !at_zero_coord(s.chart2.den).is_zero();

  // (c1) transport: s1(1/w, t) and 1/s2(w, t) agree as rational functions.
  RationalFunc lhs = substitute_reciprocal(s.chart1.num, 0) *
                     substitute_reciprocal(s.chart1.den, 0).reciprocal();
  RationalFunc rhs = s.chart2.reciprocal();
  out.transport_identity = lhs.num * rhs.den == rhs.num * lhs.den;

  // (c2) damping: the parameter direction must vanish at the marked point.
  out.damped_at_marked = at_zero_coord(s.twist_factor).is_zero();

  // (c3) seeded numeric spot checks of the transport identity away from the
  // marked point and the pole loci.
  SplitMix64 rng(seed);
  std::size_t valid = 0;
  bool ok = true;
  for (std::size_t k = 0; k < 4 * samples && valid < samples; ++k) {
    auto draw = [&rng]() {
      long a = static_cast<long>(rng.below(9)) - 4;
      long b = static_cast<long>(rng.below(9)) - 4;
      return GaussianRational(rat(a, 4), rat(b, 4));
    };
    std::vector<GaussianRational> p{draw(), draw()};
    if (p[0] == GaussianRational(0)) continue;
    GaussianRational ld = lhs.den.eval(p), rd = rhs.den.eval(p);
    if (ld == GaussianRational(0) || rd == GaussianRational(0)) continue;
    ++valid;
    if (lhs.num.eval(p) * rd != rhs.num.eval(p) * ld) ok = false;
  }
  out.samples_agree = samples == 0 || (ok && valid > 0);

  return out;
}

// Smallest twist passing every check.  The untwisted spray is regular on the
// line itself, so only the damping condition rules it out.
inline std::uint32_t minimal_twist_p1() {
  for (std::uint32_t m = 0;; ++m)
    if (verify_spray_p1(m).all()) return m;
}

}  // namespace polyrank

#endif
