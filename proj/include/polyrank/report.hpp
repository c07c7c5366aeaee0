#ifndef POLYRANK_REPORT_HPP
#define POLYRANK_REPORT_HPP

// JSON reports for pipeline runs, and their re-verification.  A report
// carries everything needed to replay the certified claims without
// re-running any search: the input, the per-stage perturbations and shear
// chains, every certified bound, and the symbolic output map.  verify_report
// replays the deterministic parts (bounds, certificates, compositions) and
// compares them field by field.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyrank/io.hpp"
#include "polyrank/pipeline.hpp"

namespace polyrank {

using ordered_json = nlohmann::ordered_json;

inline ordered_json cert_to_json(const Certificate& c) {
  ordered_json j;
  j["status"] = c.certified() ? "Certified" : "NotCertified";
  j["reason"] = c.reason;
  j["grid_depth"] = c.grid_depth;
  j["cells"] = c.cell_count;
  return j;
}

inline Certificate cert_from_json(const ordered_json& j) {
  Certificate c;
  c.status = j.at("status").get<std::string>() == "Certified"
                 ? CertStatus::Certified
                 : CertStatus::NotCertified;
  c.reason = j.at("reason").get<std::string>();
  c.grid_depth = j.at("grid_depth").get<int>();
  c.cell_count = j.at("cells").get<std::uint64_t>();
  return c;
}

inline ordered_json map_to_json(const PolyMap& f) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : f.components) arr.push_back(poly_to_string(c));
  return arr;
}

inline PolyMap map_from_json(const ordered_json& arr, std::size_t n) {
  std::vector<MultiPoly> comps;
  for (const auto& s : arr)
    comps.push_back(parse_poly(s.get<std::string>(), n));
  return PolyMap(std::move(comps));
}

inline ordered_json chain_to_json(const ShearChain& ch) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : ch.shears) {
    ordered_json e;
    e["target"] = s.target + 1;  // 1-based, like the z variables
    e["offset"] = poly_to_string(s.offset);
    ordered_json anchor = ordered_json::array();
    for (const auto& a : s.anchor) anchor.push_back(complex_to_string(a));
    e["anchor"] = anchor;
    arr.push_back(std::move(e));
  }
  return arr;
}

inline ShearChain chain_from_json(const ordered_json& arr, std::size_t n) {
  ShearChain ch(n);
  for (const auto& e : arr) {
    std::size_t target = e.at("target").get<std::size_t>();
    if (target < 1 || target > n)
      throw ParseError(0, 0, "shear target out of range");
    MultiPoly offset = parse_poly(e.at("offset").get<std::string>(), n);
    std::vector<GaussianRational> anchor;
    for (const auto& a : e.at("anchor"))
      anchor.push_back(parse_complex_scalar(a.get<std::string>()));
    ch.push(ElementaryShear(target - 1, std::move(offset), std::move(anchor)));
  }
  return ch;
}

inline std::string emit_report(const PipelineConfig& cfg,
                               const PipelineResult& res) {
  ordered_json j;
  j["tool"] = "polyrank-pipeline";
  j["format"] = 1;
  {
    ordered_json in;
    in["vars"] = cfg.f.n();
    in["map"] = map_to_json(cfg.f);
    in["hash"] = hex64(fnv1a64(pmap_to_string(cfg.f)));
    j["input"] = std::move(in);
  }
  {
    ordered_json c;
    c["rank"] = cfg.rank;
    c["K"] = region_to_string(cfg.K);
    c["Q"] = region_to_string(cfg.Q);
    c["epsilon"] = rational_to_string(cfg.epsilon);
    c["stages"] = cfg.stages;
    c["seed"] = cfg.seed;
    c["max_depth"] = cfg.max_depth;
    c["perturb_degree"] = cfg.perturb_degree;
    c["escape_candidates"] = cfg.escape_candidates;
    if (cfg.avoid) {
      ordered_json av = ordered_json::array();
      for (const auto& g : cfg.avoid->generators())
        av.push_back(poly_to_string(g));
      c["avoid"] = std::move(av);
    }
    j["config"] = std::move(c);
  }
  {
    ordered_json stages = ordered_json::array();
    for (const auto& s : res.stage_records) {
      ordered_json e;
      e["index"] = s.index;
      e["inner"] = region_to_string(s.inner);
      e["outer"] = region_to_string(s.outer);
      e["budget"] = rational_to_string(s.budget);
      e["perturbation"] = map_to_json(s.perturbation);
      e["perturbation_sup"] = rational_to_string(s.perturbation_sup);
      e["degeneracy_dim"] = s.degeneracy_dim;
      e["chain"] = chain_to_json(s.chain);
      e["deviation_budget"] = rational_to_string(s.deviation_budget);
      e["deviation"] = rational_to_string(s.deviation);
      e["map_shift_bound"] = rational_to_string(s.map_shift_bound);
      e["escape_certificate"] = cert_to_json(s.escape_cert);
      e["escape_candidates_tried"] = s.escape_candidates_tried;
      stages.push_back(std::move(e));
    }
    j["stages"] = std::move(stages);
  }
  {
    ordered_json f;
    f["map"] = map_to_json(res.result);
    f["pre_shear_map"] = map_to_json(res.pre_shear);
    f["chain"] = chain_to_json(res.final_chain);
    f["rank_certificate"] = cert_to_json(res.rank_cert);
    if (res.avoid_cert)
      f["avoidance_certificate"] = cert_to_json(*res.avoid_cert);
    f["total_shift"] = rational_to_string(res.total_shift);
    f["certified"] = res.certified;
    j["final"] = std::move(f);
  }
  return j.dump(2) + "\n";
}

struct ReportVerification {
  bool ok = false;
  std::vector<std::string> failures;
};

inline bool same_cert(const Certificate& a, const Certificate& b) {
  return a.status == b.status && a.reason == b.reason &&
         a.grid_depth == b.grid_depth && a.cell_count == b.cell_count;
}

// Replay every deterministic claim in a report.  Searches are not re-run;
// the logged perturbations and chains are taken as given and every bound,
// certificate, and symbolic composition is recomputed and compared.
inline ReportVerification verify_report(const std::string& text) {
  ReportVerification out;
  auto fail = [&out](const std::string& msg) { out.failures.push_back(msg); };

  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("report is not valid JSON: ") + e.what());
    return out;
  }
  try {
    std::size_t n = j.at("input").at("vars").get<std::size_t>();
    PolyMap f = map_from_json(j.at("input").at("map"), n);
    if (hex64(fnv1a64(pmap_to_string(f))) !=
        j.at("input").at("hash").get<std::string>())
      fail("input hash mismatch");

    const auto& c = j.at("config");
    std::size_t r = c.at("rank").get<std::size_t>();
    Polydisc K = parse_region(c.at("K").get<std::string>());
    Polydisc Q = parse_region(c.at("Q").get<std::string>());
    Rational epsilon = parse_rational_scalar(c.at("epsilon").get<std::string>());
    std::size_t stages = c.at("stages").get<std::size_t>();
    int max_depth = c.at("max_depth").get<int>();
    std::optional<Ideal> avoid;
    if (c.contains("avoid")) {
      std::vector<MultiPoly> gens;
      for (const auto& g : c.at("avoid"))
        gens.push_back(parse_poly(g.get<std::string>(), f.p()));
      avoid = Ideal(std::move(gens), f.p());
    }

    const auto& stage_arr = j.at("stages");
    if (stage_arr.size() != stages)
      fail("stage count differs from config");

    PolyMap f_cur = f;
    PolyMap pre_shear = f;
    ShearChain final_chain(n);
    Rational eps_j = epsilon;
    Rational total(0);
    std::size_t idx = 0;
    for (const auto& s : stage_arr) {
      ++idx;
      eps_j /= 2;
      std::string tag = "stage " + std::to_string(idx) + ": ";
      Polydisc inner = Polydisc::interpolate(K, Q, static_cast<long>(idx) - 1,
                                             static_cast<long>(stages));
      Polydisc outer = Polydisc::interpolate(K, Q, static_cast<long>(idx),
                                             static_cast<long>(stages));
      if (region_to_string(inner) != s.at("inner").get<std::string>())
        fail(tag + "inner region mismatch");
      if (region_to_string(outer) != s.at("outer").get<std::string>())
        fail(tag + "outer region mismatch");
      if (parse_rational_scalar(s.at("budget").get<std::string>()) != eps_j)
        fail(tag + "budget is not epsilon/2^j");
      Polydisc work = inner.inflated(Rational(1));

      PolyMap P = map_from_json(s.at("perturbation"), n);
      PolyMap fP = f_cur;
      for (std::size_t i = 0; i < fP.p(); ++i)
        fP.components[i] += P.components[i];
      Rational sup = sup_norm_bound(P, work);
      if (rational_to_string(sup) != s.at("perturbation_sup").get<std::string>())
        fail(tag + "perturbation sup bound mismatch");
      if (!(sup < Rational(eps_j / 2)))
        fail(tag + "perturbation exceeds half the stage budget");

      Ideal sigma = degeneracy_ideal(fP, r - 1);
      if (avoid) sigma = ideal_product(sigma, pullback_ideal(*avoid, fP));
      long dim = sigma.dimension();
      if (dim != s.at("degeneracy_dim").get<long>())
        fail(tag + "degeneracy dimension mismatch");
      if (dim > static_cast<long>(n) - 2)
        fail(tag + "degeneracy locus not of codimension >= 2");

      ShearChain chain = chain_from_json(s.at("chain"), n);
      Rational dev = sup_deviation_bound(chain, inner);
      if (rational_to_string(dev) != s.at("deviation").get<std::string>())
        fail(tag + "deviation bound mismatch");
      Rational dbudget =
          parse_rational_scalar(s.at("deviation_budget").get<std::string>());
      if (!(dev < dbudget)) fail(tag + "deviation exceeds its budget");
      if (dbudget > 1) fail(tag + "deviation budget above the inflation cap");
      Rational L = lipschitz_bound(fP, work);
      if (L > 0 && !(Rational(L * dev) < Rational(eps_j / 2)))
        fail(tag + "shear shift exceeds half the stage budget");
      Rational shift = Rational(sup + L * dev);
      if (rational_to_string(shift) != s.at("map_shift_bound").get<std::string>())
        fail(tag + "map shift bound mismatch");
      total += shift;

      Certificate esc = certify_chained_nonvanishing(
          enriched_nonvanishing_generators(sigma), chain, outer, max_depth);
      if (!esc.certified()) fail(tag + "escape certificate did not replay");
      else if (!same_cert(esc, cert_from_json(s.at("escape_certificate"))))
        fail(tag + "escape certificate differs from the logged one");

      pre_shear = fP;
      final_chain = chain;
      f_cur = chain.empty() ? fP : fP.compose(chain.expand());
    }

    const auto& fin = j.at("final");
    PolyMap logged_result = map_from_json(fin.at("map"), n);
    if (!(logged_result == f_cur))
      fail("final map is not the composition of the logged stages");
    PolyMap logged_pre = map_from_json(fin.at("pre_shear_map"), n);
    if (!(logged_pre == pre_shear)) fail("pre-shear map mismatch");
    ShearChain logged_chain = chain_from_json(fin.at("chain"), n);
    if (chain_to_json(logged_chain) != chain_to_json(final_chain))
      fail("final chain mismatch");

    Certificate rank_cert = certify_rank_at_least_chained(
        pre_shear, r, final_chain, Q, max_depth);
    if (!rank_cert.certified()) fail("final rank certificate did not replay");
    else if (!same_cert(rank_cert, cert_from_json(fin.at("rank_certificate"))))
      fail("final rank certificate differs from the logged one");

    if (avoid) {
      if (!fin.contains("avoidance_certificate")) {
        fail("avoidance certificate missing");
      } else {
        Ideal post = pullback_ideal(*avoid, pre_shear);
        Certificate ac = certify_chained_nonvanishing(
            enriched_nonvanishing_generators(post), final_chain, Q, max_depth);
        if (!ac.certified()) fail("avoidance certificate did not replay");
        else if (!same_cert(ac,
                            cert_from_json(fin.at("avoidance_certificate"))))
          fail("avoidance certificate differs from the logged one");
      }
    }

    if (rational_to_string(total) != fin.at("total_shift").get<std::string>())
      fail("total shift mismatch");
    if (!(total < epsilon)) fail("total shift not below epsilon");
    if (!fin.at("certified").get<bool>())
      fail("report does not claim certification");
  } catch (const std::exception& e) {
    fail(std::string("replay aborted: ") + e.what());
  }

  out.ok = out.failures.empty();
  return out;
}

}  // namespace polyrank

#endif
