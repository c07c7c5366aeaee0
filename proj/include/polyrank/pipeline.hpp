#ifndef POLYRANK_PIPELINE_HPP
#define POLYRANK_PIPELINE_HPP

// Finite-stage construction of a polynomial map that keeps rank >= r on a
// large region Q while staying epsilon-close on a smaller region K to a map
// that had the rank bound only near K.  Each stage enlarges the region along
// a straight-line interpolation K -> Q, spends half its geometric budget
// epsilon/2^j on a generic perturbation that crushes the rank degeneracy
// locus to codimension >= 2, and the other half on a shear escape that moves
// the enlarged region off that locus.  All closeness claims are certified
// exact bounds; the final rank claim is a grid certificate that factors
// through the last shear chain (shears are invertible with unimodular
// Jacobian, so composing with them does not change pointwise rank).

#include <cstdint>
#include <optional>
#include <vector>

#include "polyrank/bounds.hpp"
#include "polyrank/certify.hpp"
#include "polyrank/errors.hpp"
#include "polyrank/genericity.hpp"
#include "polyrank/groebner.hpp"
#include "polyrank/multipoly.hpp"
#include "polyrank/polydisc.hpp"
#include "polyrank/rank_strata.hpp"
#include "polyrank/rng.hpp"
#include "polyrank/shear.hpp"

namespace polyrank {

struct PipelineConfig {
  PolyMap f;
  std::size_t rank = 0;
  Polydisc K, Q;           // K must sit inside Q
  Rational epsilon;
  std::size_t stages = 1;
  std::uint64_t seed = 0;
  int max_depth = 8;
  std::uint32_t perturb_degree = 2;
  std::size_t escape_candidates = 64;
  std::optional<Ideal> avoid;  // algebraic set in the target to stay off
};

struct StageRecord {
  std::size_t index = 0;  // 1-based
  Polydisc inner, outer;  // region before and after this stage
  Rational budget;        // epsilon / 2^index
  PolyMap perturbation;
  Rational perturbation_sup;  // certified sup of the perturbation
  long degeneracy_dim = 0;    // of the locus after perturbing
  ShearChain chain;
  Rational deviation_budget;
  Rational deviation;       // certified sup |Psi - id| on inner
  Rational map_shift_bound; // certified sup |f_j - f_(j-1)| on inner
  Certificate escape_cert;
  std::size_t escape_candidates_tried = 0;
};

struct PipelineResult {
  PolyMap result;         // the output map, symbolically composed
  PolyMap pre_shear;      // final stage's map before the last composition
  ShearChain final_chain;
  std::vector<StageRecord> stage_records;
  Certificate rank_cert;
  std::optional<Certificate> avoid_cert;
  Rational total_shift;   // certified sup |result - input| on K
  bool certified = false;
};

namespace detail {

// Coordinates the stage's shears may move: the stage index walks through the
// two-dimensional factors (z1,z2), (z3,z4), ...; with an odd variable count
// the last factor is the single remaining coordinate.
inline std::vector<std::size_t> stage_targets(std::size_t n,
                                              std::size_t stage_index) {
  std::size_t pairs = (n + 1) / 2;
  std::size_t a = (stage_index - 1) % pairs;
  std::vector<std::size_t> t{2 * a};
  if (2 * a + 1 < n) t.push_back(2 * a + 1);
  return t;
}

}  // namespace detail

inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
  const PolyMap& f = cfg.f;
  std::size_t n = f.n(), p = f.p(), r = cfg.rank;
  if (r == 0 || r > n || r > p)
    throw HypothesisViolation("rank target outside 1..min(n,p)");
  if (generic_stratum_codim(n, p, r - 1) < 2)
    throw HypothesisViolation(
        "rank degeneracy locus has generic codimension < 2; "
        "the construction cannot remove it");
  if (cfg.K.n() != n || cfg.Q.n() != n)
    throw std::invalid_argument("region arity");
  if (!cfg.Q.contains(cfg.K))
    throw HypothesisViolation("K must be contained in Q");
  if (cfg.epsilon <= 0) throw std::invalid_argument("epsilon must be > 0");
  if (cfg.stages == 0) throw std::invalid_argument("need at least one stage");
  if (cfg.avoid && cfg.avoid->nvars() != p)
    throw std::invalid_argument("avoided set must live in the target space");

  // Standing hypotheses, certified before any stage runs: the input has the
  // rank on K, and its image there misses the avoided set.
  if (!certify_rank_at_least(f, r, cfg.K, cfg.max_depth).certified())
    throw HypothesisViolation(
        "could not certify the input rank bound on K");
  if (cfg.avoid) {
    Ideal pre = pullback_ideal(*cfg.avoid, f);
    if (!certify_system_nonvanishing(enriched_nonvanishing_generators(pre),
                                     cfg.K, cfg.max_depth)
             .certified())
      throw HypothesisViolation(
          "could not certify the input image misses the avoided set on K");
  }

  PipelineResult out;
  SplitMix64 master(cfg.seed);
  PolyMap f_cur = f;
  Rational eps_j = cfg.epsilon;
  Rational total(0);

  for (std::size_t j = 1; j <= cfg.stages; ++j) {
    eps_j /= 2;
    StageRecord rec;
    rec.index = j;
    rec.inner = Polydisc::interpolate(cfg.K, cfg.Q, static_cast<long>(j) - 1,
                                      static_cast<long>(cfg.stages));
    rec.outer = Polydisc::interpolate(cfg.K, cfg.Q, static_cast<long>(j),
                                      static_cast<long>(cfg.stages));
    rec.budget = eps_j;
    Polydisc work = rec.inner.inflated(Rational(1));
    std::vector<std::size_t> targets = detail::stage_targets(n, j);

    SplitMix64 stage_rng = master.fork();
    Rational pbudget = Rational(eps_j / 2);
    bool done = false;
    for (int attempt = 0; attempt < 4 && !done; ++attempt, pbudget /= 2) {
      DegeneracyReduction red = reduce_degeneracy(
          f_cur, r, work, pbudget, stage_rng.next(),
          cfg.avoid ? &*cfg.avoid : nullptr, cfg.perturb_degree);
      Ideal sigma = degeneracy_ideal(red.perturbed, r - 1);
      if (cfg.avoid)
        sigma = ideal_product(sigma, pullback_ideal(*cfg.avoid, red.perturbed));

      Rational L = lipschitz_bound(red.perturbed, work);
      Rational delta(1);
      if (L > 0) {
        delta = Rational(Rational(eps_j / 2) / L);
        if (delta > 1) delta = 1;
      }
      EscapeResult esc;
      try {
        esc = find_escape(sigma, rec.outer, rec.inner, delta,
                          stage_rng.next(), cfg.max_depth,
                          cfg.escape_candidates, &targets);
      } catch (const HypothesisViolation&) {
        continue;  // perturbation destroyed the margin near K; shrink it
      } catch (const BudgetExhausted&) {
        continue;
      }
      rec.perturbation = red.perturbation;
      rec.perturbation_sup = red.sup_bound;
      rec.degeneracy_dim = red.achieved_dim;
      rec.chain = esc.chain;
      rec.deviation_budget = delta;
      rec.deviation = esc.deviation_bound;
      rec.map_shift_bound = Rational(red.sup_bound + L * esc.deviation_bound);
      rec.escape_cert = esc.cert;
      rec.escape_candidates_tried = esc.candidates_tried;

      out.pre_shear = red.perturbed;
      out.final_chain = esc.chain;
      f_cur = esc.chain.empty()
                  ? red.perturbed
                  : red.perturbed.compose(esc.chain.expand());
      done = true;
    }
    if (!done)
      throw BudgetExhausted("stage " + std::to_string(j) +
                            ": no perturbation admitted a certified escape");
    total += rec.map_shift_bound;
    out.stage_records.push_back(std::move(rec));
  }

  out.result = f_cur;
  out.total_shift = total;
  out.rank_cert = certify_rank_at_least_chained(out.pre_shear, r,
                                                out.final_chain, cfg.Q,
                                                cfg.max_depth);
  bool ok = out.rank_cert.certified() && out.total_shift < cfg.epsilon;
  if (cfg.avoid) {
    Ideal post = pullback_ideal(*cfg.avoid, out.pre_shear);
    out.avoid_cert = certify_chained_nonvanishing(
        enriched_nonvanishing_generators(post), out.final_chain, cfg.Q,
        cfg.max_depth);
    ok = ok && out.avoid_cert->certified();
  }
  out.certified = ok;
  return out;
}

}  // namespace polyrank

#endif
