#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "polyrank/errors.hpp"
#include "polyrank/shear.hpp"

using namespace polyrank;

namespace {

GaussianRational gr(long re, long im = 0) { return GaussianRational(re, im); }

const Polydisc unit_bidisc({gr(0), gr(0)}, {rat(1), rat(1)});
const Polydisc box2({gr(0), gr(0)}, {rat(2), rat(2)});

MultiPoly z(std::size_t i) { return MultiPoly::variable(2, i); }

// z2 -> z2 + z1^10/20, anchored at the origin
ShearChain hand_witness() {
  MultiPoly off = z(0).pow(10);
  off.scale(GaussianRational(rat(1, 20)));
  ShearChain psi(2);
  psi.push(ElementaryShear(1, std::move(off), unit_bidisc.center));
  return psi;
}

// the point {(3/2, 0)} as an ideal
Ideal point_sigma() {
  return Ideal({z(0) - MultiPoly::constant(2, gr(3) / gr(2)), z(1)});
}

}  // namespace

TEST_CASE("shear constructor validates its inputs") {
  REQUIRE_THROWS_AS(ElementaryShear(2, z(0)), std::invalid_argument);
  // offset must not involve the target coordinate
  REQUIRE_THROWS_AS(ElementaryShear(0, z(0)), std::invalid_argument);
  REQUIRE_THROWS_AS(ElementaryShear(1, z(0), {gr(0)}), std::invalid_argument);
  ShearChain psi(2);
  REQUIRE_THROWS_AS(psi.push(ElementaryShear(0, MultiPoly::variable(3, 1))),
                    std::invalid_argument);
}

TEST_CASE("apply agrees with the expanded polynomial components") {
  ShearChain psi(2);
  MultiPoly g1 = z(1) * z(1) + MultiPoly::constant(2, gr(0, 1));
  psi.push(ElementaryShear(0, g1));
  MultiPoly g2 = z(0) * z(0) * z(0);
  psi.push(ElementaryShear(1, g2, {gr(1), gr(-2)}));

  std::vector<MultiPoly> w = psi.expand();
  std::vector<std::vector<GaussianRational>> pts = {
      {gr(0), gr(0)},
      {gr(2, 1), gr(-1)},
      {GaussianRational(rat(1, 3)), GaussianRational(rat(-5, 7), rat(1, 2))}};
  for (const auto& p : pts) {
    std::vector<GaussianRational> a = psi.apply(p);
    REQUIRE(a[0] == w[0].eval(p));
    REQUIRE(a[1] == w[1].eval(p));
  }
}

TEST_CASE("inverse chain undoes the chain pointwise") {
  ShearChain psi(2);
  psi.push(ElementaryShear(0, z(1) * z(1)));
  psi.push(ElementaryShear(1, z(0) * z(0) + z(0), {gr(3), gr(0)}));
  psi.push(ElementaryShear(0, z(1) - MultiPoly::constant(2, gr(5))));
  ShearChain inv = psi.inverse();
  std::vector<GaussianRational> p = {GaussianRational(rat(2, 3)),
                                     GaussianRational(rat(-1, 4), rat(1, 8))};
  REQUIRE(inv.apply(psi.apply(p)) == p);
  REQUIRE(psi.apply(inv.apply(p)) == p);
}

TEST_CASE("anchored sup bound of a centered peak has no binomial loss") {
  // c*z1^M on the radius-1 bidisc centered at the anchor: the bound is
  // exactly |Re c| + |Im c|.
  MultiPoly off = z(0).pow(7);
  off.scale(GaussianRational(rat(3, 100), rat(4, 100)));
  ElementaryShear s(1, std::move(off), unit_bidisc.center);
  REQUIRE(anchored_sup_bound(s, unit_bidisc) == rat(7, 100));
}

TEST_CASE("chain deviation bound is at most the sum of inflated stages") {
  ShearChain psi(2);
  MultiPoly o1 = z(0).pow(4);
  o1.scale(GaussianRational(rat(1, 10)));
  MultiPoly o2 = z(1).pow(3);
  o2.scale(GaussianRational(rat(1, 50)));
  psi.push(ElementaryShear(1, o1, unit_bidisc.center));
  psi.push(ElementaryShear(0, o2, unit_bidisc.center));

  Rational d1 = anchored_sup_bound(psi.shears[0], unit_bidisc);
  Polydisc inflated = unit_bidisc;
  inflated.radius[1] += d1;
  Rational d2 = anchored_sup_bound(psi.shears[1], inflated);
  Rational dev = sup_deviation_bound(psi, unit_bidisc);
  REQUIRE(dev <= d1 + d2);
  REQUIRE(d1 == rat(1, 10));
  // second stage sees the first stage's inflation: (1 + 1/10)^3 / 50
  REQUIRE(d2 == rat(1331, 50000));
}

TEST_CASE("shrinking the shear coefficient never grows the deviation bound") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    std::uint32_t M = 2 + static_cast<std::uint32_t>(rng.below(9));
    long num = 1 + static_cast<long>(rng.below(40));
    std::size_t target = static_cast<std::size_t>(rng.below(2));
    MultiPoly off = z(1 - target).pow(M);
    off.scale(GaussianRational(rat(num, 41)));
    ShearChain psi(2);
    psi.push(ElementaryShear(target, off, unit_bidisc.center));
    Rational full = sup_deviation_bound(psi, unit_bidisc);
    for (long s : {1, 2, 9}) {
      MultiPoly scaled = off;
      scaled.scale(GaussianRational(rat(s, 10)));
      ShearChain q(2);
      q.push(ElementaryShear(target, std::move(scaled), unit_bidisc.center));
      REQUIRE(sup_deviation_bound(q, unit_bidisc) <= full);
    }
  }
}

TEST_CASE("hand witness escapes the point three-halves") {
  Ideal sigma = point_sigma();
  std::vector<MultiPoly> gens = enriched_nonvanishing_generators(sigma);
  ShearChain psi = hand_witness();

  // preimage of the point lands outside the box, so escape is plausible
  std::vector<GaussianRational> pre =
      psi.inverse().apply({gr(3) / gr(2), gr(0)});
  REQUIRE(pre[0] == gr(3) / gr(2));
  REQUIRE(pre[1] == GaussianRational(rat(-59049, 20480)));
  REQUIRE(!box2.contains(pre));

  EscapeCheck chk = verify_escape(gens, psi, box2, unit_bidisc, rat(1, 10), 8);
  REQUIRE(chk.accepted());
  REQUIRE(chk.deviation == rat(1, 20));
  REQUIRE(chk.cert.reason == "all-cells-certified");
  REQUIRE(chk.cert.grid_depth == 6);
}

TEST_CASE("escaped pinned sources reads degree-one univariate generators") {
  std::vector<MultiPoly> gens = {z(0) - MultiPoly::constant(2, gr(3) / gr(2)),
                                 z(1)};
  std::vector<std::size_t> pinned =
      escaped_pinned_sources(gens, unit_bidisc);
  // z1 is pinned at 3/2, outside the unit disc; z2 is pinned at 0, inside
  REQUIRE(pinned == std::vector<std::size_t>{0});

  // bivariate linear and higher-degree univariate generators are ignored
  std::vector<MultiPoly> other = {z(0) + z(1) - MultiPoly::constant(2, gr(7)),
                                  z(0).pow(2) - MultiPoly::constant(2, gr(9))};
  REQUIRE(escaped_pinned_sources(other, unit_bidisc).empty());
}

TEST_CASE("seeded search finds a certified escape and it re-verifies") {
  Ideal sigma = point_sigma();
  EscapeResult r = find_escape(sigma, box2, unit_bidisc, rat(1, 10), 8);
  REQUIRE(r.candidates_tried == 1);
  REQUIRE(r.chain.shears.size() == 1);
  REQUIRE(r.chain.shears[0].target == 1);
  REQUIRE(r.deviation_bound == rat(1, 20));
  REQUIRE(r.cert.certified());

  // found offset is -(1/20) z1^10
  const MultiPoly& off = r.chain.shears[0].offset;
  REQUIRE(off.terms().size() == 1);
  const auto& [m, c] = *off.terms().begin();
  REQUIRE(m.e == std::vector<std::uint32_t>{10, 0});
  REQUIRE(c == GaussianRational(rat(-1, 20)));

  std::vector<MultiPoly> gens = enriched_nonvanishing_generators(sigma);
  EscapeCheck replay =
      verify_escape(gens, r.chain, box2, unit_bidisc, rat(1, 10), 8);
  REQUIRE(replay.accepted());
}

TEST_CASE("search respects an explicit target set") {
  Ideal sigma = point_sigma();
  std::vector<std::size_t> tg{1};
  EscapeResult r =
      find_escape(sigma, box2, unit_bidisc, rat(1, 10), 8, 8, 64, &tg);
  REQUIRE(r.cert.certified());
  for (const auto& s : r.chain.shears) REQUIRE(s.target == 1);
}

TEST_CASE("search returns the identity when the box is already clear") {
  Ideal far({z(0) - MultiPoly::constant(2, gr(42)),
             z(1) - MultiPoly::constant(2, gr(37))});
  EscapeResult r = find_escape(far, box2, unit_bidisc, rat(1, 10), 3);
  REQUIRE(r.is_identity());
  REQUIRE(r.candidates_tried == 0);
  REQUIRE(r.cert.certified());
  REQUIRE(r.deviation_bound == rat(0));
}

TEST_CASE("search rejects unusable inputs") {
  Ideal sigma = point_sigma();
  // fewer than two variables
  Ideal one({MultiPoly::variable(1, 0) - MultiPoly::constant(1, gr(5))});
  Polydisc d1({gr(0)}, {rat(1)});
  REQUIRE_THROWS_AS(find_escape(one, d1, d1, rat(1, 10), 8),
                    HypothesisViolation);
  // codimension one: a hypersurface cannot be escaped
  Ideal hyper({z(0) - MultiPoly::constant(2, gr(3) / gr(2))});
  REQUIRE_THROWS_AS(find_escape(hyper, box2, unit_bidisc, rat(1, 10), 8),
                    HypothesisViolation);
  // set meets the proximity region: the zero sits at its center
  Ideal through({z(0), z(1)});
  REQUIRE_THROWS_AS(find_escape(through, box2, unit_bidisc, rat(1, 10), 8),
                    HypothesisViolation);
  // malformed arguments
  REQUIRE_THROWS_AS(find_escape(sigma, box2, unit_bidisc, rat(0), 8),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(find_escape(sigma, d1, unit_bidisc, rat(1, 10), 8),
                    std::invalid_argument);
  std::vector<std::size_t> empty_tg;
  REQUIRE_THROWS_AS(
      find_escape(sigma, box2, unit_bidisc, rat(1, 10), 8, 8, 64, &empty_tg),
      std::invalid_argument);
  std::vector<std::size_t> bad_tg{2};
  REQUIRE_THROWS_AS(
      find_escape(sigma, box2, unit_bidisc, rat(1, 10), 8, 8, 64, &bad_tg),
      std::invalid_argument);
}

TEST_CASE("search reports budget exhaustion honestly") {
  Ideal sigma = point_sigma();
  REQUIRE_THROWS_AS(find_escape(sigma, box2, unit_bidisc, rat(1, 10), 1, 8, 4),
                    BudgetExhausted);
}
