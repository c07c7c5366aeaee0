// Command-line surface over the rank-certification engine.
//
// Subcommands:
//   strata       degeneracy locus of a map below a rank target
//   dim          Krull dimension of an ideal's zero set
//   genericity   dimension-law trials on random maps
//   perturb      push a map's degeneracy locus down to codimension two
//   escape       shear chain moving a box off an algebraic set
//   spray-p1     twisted fiber spray over the projective line
//   verify-rank  grid certificate that rank >= r on a polydisc
//   pipeline     staged approximation raising the rank on a region
//   check-report replay a pipeline report and confirm every claim
//
// Exit codes: 0 success / certified, 2 not certified / budget exhausted,
// 3 hypothesis violation, 4 parse error.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyrank/errors.hpp"
#include "polyrank/genericity.hpp"
#include "polyrank/io.hpp"
#include "polyrank/pipeline.hpp"
#include "polyrank/rank_strata.hpp"
#include "polyrank/report.hpp"
#include "polyrank/shear.hpp"
#include "polyrank/spray_p1.hpp"

namespace {

using namespace polyrank;

Polydisc region_from_flags(const std::string& centers,
                           const std::string& radii) {
  return parse_region(centers + ";" + radii);
}

void check_rank_range(std::size_t r, const PolyMap& f) {
  if (r == 0 || r > f.n() || r > f.p())
    throw HypothesisViolation("rank target outside 1..min(n,p)");
}

ordered_json ideal_json(const Ideal& I) {
  ordered_json gens = ordered_json::array();
  for (const auto& g : I.generators()) gens.push_back(poly_to_string(g));
  return gens;
}

void print(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_strata(const std::string& map_path, std::size_t rank) {
  PolyMap f = load_pmap(map_path);
  check_rank_range(rank, f);
  Ideal I = degeneracy_ideal(f, rank - 1);
  ordered_json j;
  j["vars"] = f.n();
  j["rank"] = rank;
  j["generators"] = ideal_json(I);
  j["dimension"] = I.dimension();
  print(j);
  return 0;
}

int cmd_dim(const std::string& ideal_path) {
  Ideal I = load_ideal(ideal_path);
  ordered_json j;
  j["vars"] = I.nvars();
  j["generators"] = ideal_json(I);
  j["dimension"] = I.dimension();
  print(j);
  return 0;
}

int cmd_genericity(std::size_t n, std::size_t p, std::size_t r,
                   std::uint32_t degree, std::size_t trials,
                   std::uint64_t seed) {
  LawTrialReport rep = dimension_law_trial(n, p, r, trials, degree, seed);
  ordered_json j;
  j["n"] = rep.n;
  j["p"] = rep.p;
  j["r"] = rep.r;
  j["degree"] = degree;
  j["seed"] = seed;
  j["expected_dim"] = rep.expected_dim;
  j["observed"] = rep.observed;
  j["matches"] = rep.matches;
  j["trials"] = rep.observed.size();
  j["all_match"] = rep.all_match();
  print(j);
  return rep.all_match() ? 0 : 2;
}

int cmd_perturb(const std::string& map_path, std::size_t rank,
                const std::string& eps, const std::string& centers,
                const std::string& radii, std::uint64_t seed,
                std::uint32_t degree, std::size_t attempts) {
  PolyMap f = load_pmap(map_path);
  Polydisc region = region_from_flags(centers, radii);
  DegeneracyReduction red =
      reduce_degeneracy(f, rank, region, parse_rational_scalar(eps), seed,
                        nullptr, degree, attempts);
  ordered_json j;
  j["vars"] = f.n();
  j["rank"] = rank;
  j["region"] = region_to_string(region);
  j["perturbation"] = map_to_json(red.perturbation);
  j["perturbed"] = map_to_json(red.perturbed);
  j["sup_bound"] = rational_to_string(red.sup_bound);
  j["achieved_dim"] = red.achieved_dim;
  j["seed"] = red.seed;
  j["attempts"] = red.attempts;
  print(j);
  return 0;
}

int cmd_escape(const std::string& ideal_path, const std::string& K,
               const std::string& box, const std::string& eps,
               std::uint64_t seed, int depth, std::size_t candidates) {
  Ideal sigma = load_ideal(ideal_path);
  EscapeResult esc =
      find_escape(sigma, parse_region(box), parse_region(K),
                  parse_rational_scalar(eps), seed, depth, candidates);
  ordered_json j;
  j["vars"] = sigma.nvars();
  j["chain"] = chain_to_json(esc.chain);
  j["identity"] = esc.is_identity();
  j["deviation_bound"] = rational_to_string(esc.deviation_bound);
  j["candidates_tried"] = esc.candidates_tried;
  j["certificate"] = cert_to_json(esc.cert);
  print(j);
  return 0;
}

int cmd_spray(bool find_m, bool have_m, std::uint32_t m, std::size_t samples,
              std::uint64_t seed) {
  if (find_m == have_m)
    throw CLI::ValidationError("spray-p1",
                               "pass exactly one of --find-m and --verify");
  ordered_json j;
  if (find_m) m = minimal_twist_p1();
  SprayChecks chk = verify_spray_p1(m, samples, seed);
  if (find_m) j["minimal_m"] = m;
  j["m"] = m;
  j["checks"]["fixes_zero_section"] = chk.fixes_zero_section;
  j["checks"]["regular_at_marked"] = chk.regular_at_marked;
  j["checks"]["transport_identity"] = chk.transport_identity;
  j["checks"]["damped_at_marked"] = chk.damped_at_marked;
  j["checks"]["samples_agree"] = chk.samples_agree;
  j["ok"] = chk.all();
  print(j);
  return chk.all() ? 0 : 2;
}

int cmd_verify_rank(const std::string& map_path, std::size_t rank,
                    const std::string& centers, const std::string& radii,
                    int depth) {
  PolyMap f = load_pmap(map_path);
  check_rank_range(rank, f);
  Polydisc region = region_from_flags(centers, radii);
  Certificate cert = certify_rank_at_least(f, rank, region, depth);
  ordered_json j;
  j["vars"] = f.n();
  j["rank"] = rank;
  j["region"] = region_to_string(region);
  j["certificate"] = cert_to_json(cert);
  print(j);
  return cert.certified() ? 0 : 2;
}

int cmd_pipeline(const std::string& map_path, std::size_t rank,
                 const std::string& K, const std::string& Q,
                 const std::string& eps, std::size_t stages,
                 std::uint64_t seed, const std::string& avoid_path, int depth,
                 std::size_t candidates, std::uint32_t perturb_degree) {
  PipelineConfig cfg;
  cfg.f = load_pmap(map_path);
  cfg.rank = rank;
  cfg.K = parse_region(K);
  cfg.Q = parse_region(Q);
  cfg.epsilon = parse_rational_scalar(eps);
  cfg.stages = stages;
  cfg.seed = seed;
  cfg.max_depth = depth;
  cfg.escape_candidates = candidates;
  cfg.perturb_degree = perturb_degree;
  if (!avoid_path.empty()) cfg.avoid = load_ideal(avoid_path);
  PipelineResult res = run_pipeline(cfg);
  std::cout << emit_report(cfg, res);
  return res.certified ? 0 : 2;
}

int cmd_check_report(const std::string& report_path) {
  ReportVerification v = verify_report(read_file(report_path));
  ordered_json j;
  j["ok"] = v.ok;
  j["failures"] = v.failures;
  print(j);
  return v.ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact rank certification for polynomial maps"};
  app.require_subcommand(1);

  std::string map_path, ideal_path, report_path, avoid_path;
  std::string centers, radii, K, Q, box, eps = "1/10";
  std::size_t rank = 1, trials = 10, attempts = 32, candidates = 64;
  std::size_t n = 0, p = 0, samples = 8;
  std::uint32_t degree = 2, m = 0;
  std::uint64_t seed = 1;
  int depth = 8;
  std::size_t stages = 1;
  bool find_m = false;

  auto* strata = app.add_subcommand(
      "strata", "ideal of the locus where the rank drops below a target");
  strata->add_option("map", map_path, "map file (.pmap)")->required();
  strata->add_option("--rank", rank, "rank target")->required();

  auto* dim =
      app.add_subcommand("dim", "dimension of an ideal's zero set");
  dim->add_option("ideal", ideal_path, "ideal file (.ideal)")->required();

  auto* gen = app.add_subcommand(
      "genericity", "compare random-map degeneracy dimensions with the law");
  gen->add_option("--n", n, "source dimension")->required();
  gen->add_option("--p", p, "target dimension")->required();
  gen->add_option("--r", rank, "rank target")->required();
  gen->add_option("--degree", degree, "coefficient degree bound");
  gen->add_option("--trials", trials, "number of random maps");
  gen->add_option("--seed", seed, "random seed");

  auto* pert = app.add_subcommand(
      "perturb", "reduce the degeneracy locus to codimension two");
  pert->add_option("map", map_path, "map file (.pmap)")->required();
  pert->add_option("--rank", rank, "rank target")->required();
  pert->add_option("--eps", eps, "sup-norm budget a/b")->required();
  pert->add_option("--center", centers, "region centers c1,c2,...")
      ->required();
  pert->add_option("--radius", radii, "region radii r1,r2,...")->required();
  pert->add_option("--seed", seed, "random seed");
  pert->add_option("--degree", degree, "perturbation degree");
  pert->add_option("--attempts", attempts, "retry budget");

  auto* esc = app.add_subcommand(
      "escape", "shear chain pushing a box off an algebraic set");
  esc->add_option("ideal", ideal_path, "ideal file (.ideal)")->required();
  esc->add_option("--K", K, "proximity region c1,..;r1,..")->required();
  esc->add_option("--box", box, "region to move off the set")->required();
  esc->add_option("--eps", eps, "deviation budget a/b")->required();
  esc->add_option("--seed", seed, "random seed");
  esc->add_option("--depth", depth, "grid subdivision depth");
  esc->add_option("--candidates", candidates, "search budget");

  auto* spray = app.add_subcommand(
      "spray-p1", "twisted fiber spray over the projective line");
  spray->add_flag("--find-m", find_m, "search for the minimal twist");
  auto* verify_opt =
      spray->add_option("--verify", m, "verify a given twist order");
  spray->add_option("--samples", samples, "seeded transport spot checks");
  spray->add_option("--seed", seed, "random seed");

  auto* vrank = app.add_subcommand(
      "verify-rank", "certify rank >= r on a polydisc");
  vrank->add_option("map", map_path, "map file (.pmap)")->required();
  vrank->add_option("--rank", rank, "rank target")->required();
  vrank->add_option("--center", centers, "region centers c1,c2,...")
      ->required();
  vrank->add_option("--radius", radii, "region radii r1,r2,...")->required();
  vrank->add_option("--depth", depth, "grid subdivision depth");

  auto* pipe = app.add_subcommand(
      "pipeline", "staged approximation raising the rank on a region");
  pipe->add_option("map", map_path, "map file (.pmap)")->required();
  pipe->add_option("--rank", rank, "rank target")->required();
  pipe->add_option("--K", K, "inner region c1,..;r1,..")->required();
  pipe->add_option("--Q", Q, "outer region c1,..;r1,..")->required();
  pipe->add_option("--eps", eps, "total deviation budget a/b")->required();
  pipe->add_option("--stages", stages, "stage count");
  pipe->add_option("--seed", seed, "random seed");
  pipe->add_option("--avoid", avoid_path, "target-space ideal to stay off");
  pipe->add_option("--depth", depth, "grid subdivision depth");
  pipe->add_option("--candidates", candidates, "escape search budget");
  pipe->add_option("--perturb-degree", degree, "perturbation degree");

  auto* check = app.add_subcommand(
      "check-report", "replay a pipeline report and confirm every claim");
  check->add_option("report", report_path, "report file (.json)")->required();

  try {
    app.parse(argc, argv);
    if (strata->parsed()) return cmd_strata(map_path, rank);
    if (dim->parsed()) return cmd_dim(ideal_path);
    if (gen->parsed())
      return cmd_genericity(n, p, rank, degree, trials, seed);
    if (pert->parsed())
      return cmd_perturb(map_path, rank, eps, centers, radii, seed, degree,
                         attempts);
    if (esc->parsed())
      return cmd_escape(ideal_path, K, box, eps, seed, depth, candidates);
    if (spray->parsed())
      return cmd_spray(find_m, verify_opt->count() > 0, m, samples, seed);
    if (vrank->parsed())
      return cmd_verify_rank(map_path, rank, centers, radii, depth);
    if (pipe->parsed())
      return cmd_pipeline(map_path, rank, K, Q, eps, stages, seed, avoid_path,
                          depth, candidates, degree);
    if (check->parsed()) return cmd_check_report(report_path);
    return 1;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 4;
  } catch (const polyrank::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const polyrank::HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 3;
  } catch (const polyrank::BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
