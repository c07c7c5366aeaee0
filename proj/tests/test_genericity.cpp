#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "polyrank/genericity.hpp"

using namespace polyrank;

namespace {

GaussianRational gr(long re, long im = 0) { return GaussianRational(re, im); }

const std::size_t N2 = 2;
const MultiPoly z1 = MultiPoly::variable(N2, 0);
const MultiPoly z2 = MultiPoly::variable(N2, 1);

}  // namespace

TEST_CASE("random map draw order is pinned") {
  SplitMix64 rng(1);
  PolyMap f = random_poly_map(1, 1, 1, 0, Rational(1), rng);

  // Mirror of the documented order: constant before z1, real numerator
  // before imaginary, all over denominator 64 with |numerator| <= 64.
  SplitMix64 mirror(1);
  long re0 = static_cast<long>(mirror.range(-64, 64));
  long im0 = static_cast<long>(mirror.range(-64, 64));
  long re1 = static_cast<long>(mirror.range(-64, 64));
  long im1 = static_cast<long>(mirror.range(-64, 64));
  GaussianRational c0(rat(re0, 64), rat(im0, 64));
  GaussianRational c1(rat(re1, 64), rat(im1, 64));
  MultiPoly want(1);
  want.add_term(Monomial(std::size_t{1}), c0);
  want.add_term(Monomial::var(1, 0), c1);
  REQUIRE(f.components[0] == want);

  SplitMix64 again(1);
  PolyMap g = random_poly_map(1, 1, 1, 0, Rational(1), again);
  REQUIRE(f == g);
}

TEST_CASE("vanishing order strips low-degree monomials") {
  SplitMix64 rng(9);
  PolyMap f = random_poly_map(2, 1, 2, 2, Rational(1), rng);
  for (const auto& [m, c] : f.components[0].terms())
    REQUIRE(m.degree() == 2);
  REQUIRE(f.components[0].term_count() <= 3);
}

TEST_CASE("small magnitudes scale the denominator up") {
  SplitMix64 rng(9);
  Rational mag(1, 100);
  PolyMap f = random_poly_map(2, 2, 2, 0, mag, rng);
  for (const auto& comp : f.components)
    for (const auto& [m, c] : comp.terms()) {
      REQUIRE(rat_abs(c.re()) <= mag);
      REQUIRE(rat_abs(c.im()) <= mag);
    }
}

TEST_CASE("ideal pullback along a map") {
  std::size_t p = 2;
  MultiPoly w1 = MultiPoly::variable(p, 0), w2 = MultiPoly::variable(p, 1);
  Ideal A({w1 - w2});
  PolyMap f({z1 * z1, z2 * z2});
  Ideal pulled = pullback_ideal(A, f);
  REQUIRE(pulled.nvars() == 2);
  REQUIRE(pulled.generators().size() == 1);
  REQUIRE(pulled.generators()[0] == z1 * z1 - z2 * z2);

  PolyMap wrong({z1});
  REQUIRE_THROWS_AS(pullback_ideal(A, wrong), std::invalid_argument);
}

TEST_CASE("expected degeneracy dimensions") {
  REQUIRE(expected_degeneracy_dim(2, 2, 2) == 1);
  REQUIRE(expected_degeneracy_dim(3, 2, 2) == 1);
  REQUIRE(expected_degeneracy_dim(2, 3, 2) == 0);
  REQUIRE(expected_degeneracy_dim(2, 2, 1) == -2);
}

TEST_CASE("dimension law on a small batch") {
  LawTrialReport rep = dimension_law_trial(2, 2, 2, 3, 2, 1001);
  REQUIRE(rep.expected_dim == 1);
  REQUIRE(rep.observed.size() == 3);
  REQUIRE(rep.all_match());

  REQUIRE_THROWS_AS(dimension_law_trial(2, 2, 0, 1, 2, 1),
                    HypothesisViolation);
  REQUIRE_THROWS_AS(dimension_law_trial(2, 2, 3, 1, 2, 1),
                    HypothesisViolation);
}

TEST_CASE("degeneracy reduction finds a certified small perturbation") {
  PolyMap f({z1 * z1, z2 * z2, z1 * z1 + z2 * z2});
  Polydisc R({gr(0), gr(0)}, {rat(1), rat(1)});
  Rational eps(1, 10);

  // Unperturbed, the locus is the axis cross: dimension 1, too big.
  REQUIRE(degeneracy_dimension(f, 1) == 1);

  DegeneracyReduction red = reduce_degeneracy(f, 2, R, eps, 7);
  REQUIRE(red.achieved_dim <= 0);
  REQUIRE(red.sup_bound < eps);
  REQUIRE(red.attempts >= 1);
  for (std::size_t i = 0; i < 3; ++i)
    REQUIRE(red.perturbed.components[i] ==
            f.components[i] + red.perturbation.components[i]);
  REQUIRE(degeneracy_dimension(red.perturbed, 1) == red.achieved_dim);

  // Deterministic replay.
  DegeneracyReduction red2 = reduce_degeneracy(f, 2, R, eps, 7);
  REQUIRE(red2.perturbation == red.perturbation);
  REQUIRE(red2.attempts == red.attempts);
}

TEST_CASE("degeneracy reduction can also dodge a target set") {
  PolyMap f({z1 * z1, z2 * z2, z1 * z1 + z2 * z2});
  Polydisc R({gr(0), gr(0)}, {rat(1), rat(1)});
  std::size_t p = 3;
  std::vector<MultiPoly> origin;
  for (std::size_t i = 0; i < p; ++i)
    origin.push_back(MultiPoly::variable(p, i));
  Ideal avoid(origin);

  DegeneracyReduction red =
      reduce_degeneracy(f, 2, R, rat(1, 10), 7, &avoid);
  REQUIRE(red.achieved_dim <= 0);

  Ideal locus = ideal_product(degeneracy_ideal(red.perturbed, 1),
                              pullback_ideal(avoid, red.perturbed));
  REQUIRE(locus.dimension() == red.achieved_dim);
}

TEST_CASE("degeneracy reduction rejects flat shapes") {
  // Equidimensional full-rank targets leave codimension 1: no perturbation
  // can help, and the caller must know.
  PolyMap sq({z1 * z1, z2 * z2});
  Polydisc R({gr(0), gr(0)}, {rat(1), rat(1)});
  REQUIRE_THROWS_AS(reduce_degeneracy(sq, 2, R, rat(1, 10), 1),
                    HypothesisViolation);
  PolyMap f({z1 * z1, z2 * z2, z1 * z1 + z2 * z2});
  REQUIRE_THROWS_AS(reduce_degeneracy(f, 0, R, rat(1, 10), 1),
                    HypothesisViolation);
  REQUIRE_THROWS_AS(reduce_degeneracy(f, 2, R, rat(0), 1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(reduce_degeneracy(f, 2, R, rat(1, 10), 1, nullptr, 2, 0),
                    BudgetExhausted);
}
