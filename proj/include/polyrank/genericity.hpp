#ifndef POLYRANK_GENERICITY_HPP
#define POLYRANK_GENERICITY_HPP

// Seeded generic perturbations and what they buy: random maps with a pinned
// coefficient draw order, empirical checks of the expected dimension of rank
// degeneracy loci, and the reduction step that pushes the degeneracy locus
// (plus an optional avoided set) down to codimension two by a small
// perturbation with a certified sup bound.

#include <cstdint>
#include <vector>

#include "polyrank/bounds.hpp"
#include "polyrank/errors.hpp"
#include "polyrank/groebner.hpp"
#include "polyrank/jets.hpp"
#include "polyrank/multipoly.hpp"
#include "polyrank/polydisc.hpp"
#include "polyrank/rank_strata.hpp"
#include "polyrank/rng.hpp"

namespace polyrank {

// Random map with coefficients a/den + (b/den) i, a and b uniform integers
// in [-B, B].  The denominator is 64 for magnitude >= 1 and otherwise the
// smallest power of two making B = floor(magnitude * den) meaningful, so
// every coefficient part is bounded by the magnitude.  Draw order is pinned:
// components outer, monomials of degree vanish_order..degree in the
// multiindices() order, real numerator before imaginary.
inline PolyMap random_poly_map(std::size_t n, std::size_t p,
                               std::uint32_t degree,
                               std::uint32_t vanish_order,
                               const Rational& magnitude, SplitMix64& rng) {
  if (magnitude <= 0) throw std::invalid_argument("magnitude must be > 0");
  mpz_class den(64);
  if (magnitude < 1) {
    while (Rational(magnitude * Rational(den)) < 64) den *= 2;
  }
  mpz_class Bz;
  {
    Rational scaled(magnitude * Rational(den));
    mpz_fdiv_q(Bz.get_mpz_t(), scaled.get_num().get_mpz_t(),
               scaled.get_den().get_mpz_t());
  }
  if (!Bz.fits_slong_p()) throw std::overflow_error("perturbation bound");
  long B = Bz.get_si();
  Rational d(den);

  auto alphas = multiindices(n, degree);
  std::vector<MultiPoly> comps;
  comps.reserve(p);
  for (std::size_t i = 0; i < p; ++i) {
    MultiPoly c(n);
    for (const auto& a : alphas) {
      std::uint64_t deg = 0;
      for (auto x : a) deg += x;
      if (deg < vanish_order) continue;
      long re = rng.range(-B, B);
      long im = rng.range(-B, B);
      c.add_term(Monomial(std::vector<std::uint32_t>(a.begin(), a.end())),
                 GaussianRational(Rational(rat(re) / d), Rational(rat(im) / d)));
    }
    comps.push_back(std::move(c));
  }
  return PolyMap(std::move(comps));
}

inline Ideal pullback_ideal(const Ideal& A, const PolyMap& f) {
  if (A.nvars() != f.p())
    throw std::invalid_argument("pullback arity: ideal lives in target space");
  std::vector<MultiPoly> gens;
  gens.reserve(A.generators().size());
  for (const auto& a : A.generators())
    gens.push_back(a.compose(f.components));
  return Ideal(std::move(gens), f.n());
}

// Dimension the rank <= r-1 locus of a generic map C^n -> C^p has;
// negative values mean the locus is expected empty.
inline long expected_degeneracy_dim(std::size_t n, std::size_t p,
                                    std::size_t r) {
  return static_cast<long>(n) - generic_stratum_codim(n, p, r - 1);
}

struct LawTrialReport {
  std::size_t n = 0, p = 0, r = 0;
  long expected_dim = 0;  // < 0: expected empty (observed must be -1)
  std::vector<long> observed;
  std::size_t matches = 0;

  bool all_match() const { return matches == observed.size(); }
};

// Draw `trials` random maps of the given shape and compare the dimension of
// their rank <= r-1 locus with the generic expectation.
inline LawTrialReport dimension_law_trial(std::size_t n, std::size_t p,
                                          std::size_t r, std::size_t trials,
                                          std::uint32_t degree,
                                          std::uint64_t seed) {
  if (r == 0 || r > n || r > p)
    throw HypothesisViolation("rank target outside 1..min(n,p)");
  LawTrialReport rep;
  rep.n = n;
  rep.p = p;
  rep.r = r;
  rep.expected_dim = expected_degeneracy_dim(n, p, r);
  SplitMix64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 sub = rng.fork();
    PolyMap f = random_poly_map(n, p, degree, 0, Rational(1), sub);
    long dim = degeneracy_dimension(f, r - 1);
    rep.observed.push_back(dim);
    long want = rep.expected_dim < 0 ? -1 : rep.expected_dim;
    if (dim == want) ++rep.matches;
  }
  return rep;
}

struct DegeneracyReduction {
  PolyMap perturbed;     // f + P
  PolyMap perturbation;  // P
  Rational sup_bound;    // certified sup of P on the region
  long achieved_dim = 0; // of the degeneracy locus joined with the avoided set
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
};

// Perturb f so that its rank <= r-1 locus, together with the preimage of an
// optional avoided set in the target, has dimension <= n-2, while keeping
// the perturbation's sup on the region certified below epsilon.  Magnitude
// halves on every retry; deterministic in the seed.
inline DegeneracyReduction reduce_degeneracy(
    const PolyMap& f, std::size_t r, const Polydisc& region,
    const Rational& epsilon, std::uint64_t seed, const Ideal* avoid = nullptr,
    std::uint32_t degree = 2, std::size_t max_attempts = 32) {
  std::size_t n = f.n(), p = f.p();
  if (r == 0 || r > n || r > p)
    throw HypothesisViolation("rank target outside 1..min(n,p)");
  if (generic_stratum_codim(n, p, r - 1) < 2)
    throw HypothesisViolation(
        "rank degeneracy locus has generic codimension < 2; "
        "it cannot be made small by perturbation");
  if (region.n() != n) throw std::invalid_argument("region arity");
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be > 0");
  if (avoid && avoid->nvars() != p)
    throw std::invalid_argument("avoided set must live in the target space");

  long goal = static_cast<long>(n) - 2;
  SplitMix64 rng(seed);
  Rational mag(epsilon / 2);
  for (std::size_t attempt = 1; attempt <= max_attempts;
       ++attempt, mag /= 2) {
    SplitMix64 sub = rng.fork();
    PolyMap P = random_poly_map(n, p, degree, 0, mag, sub);
    Rational sup = sup_norm_bound(P, region);
    if (sup >= epsilon) continue;  // bound not yet certified; halve and retry
    PolyMap g = f;
    for (std::size_t i = 0; i < p; ++i)
      g.components[i] += P.components[i];
    Ideal locus = degeneracy_ideal(g, r - 1);
    if (avoid) locus = ideal_product(locus, pullback_ideal(*avoid, g));
    long dim = locus.dimension();
    if (dim <= goal) {
      DegeneracyReduction out;
      out.perturbed = std::move(g);
      out.perturbation = std::move(P);
      out.sup_bound = std::move(sup);
      out.achieved_dim = dim;
      out.seed = seed;
      out.attempts = attempt;
      return out;
    }
  }
  throw BudgetExhausted("no perturbation achieved the dimension goal");
}

}  // namespace polyrank

#endif
