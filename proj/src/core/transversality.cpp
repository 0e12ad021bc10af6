#include "core/transversality.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/error.hpp"
#include "core/examples.hpp"
#include "core/json_io.hpp"
#include "core/json_util.hpp"
#include "core/lipschitz.hpp"

namespace germlab {

using nlohmann::json;

double default_intersection_eps(const DirectionSet& d1, const DirectionSet& d2) {
  return 2.0 * std::max(d1.eps, d2.eps);
}

DirectionSet intersect_direction_sets(const DirectionSet& d1, const DirectionSet& d2, double eps) {
  if (d1.dim != d2.dim) fail(ErrorCode::InvalidArgument, "direction sets have different dimensions");
  if (eps <= 0.0) eps = default_intersection_eps(d1, d2);
  PointCloud cand(d1.dim);
  std::vector<std::int64_t> w;
  auto collect = [&](const DirectionSet& a, const DirectionSet& b) {
    if (b.empty()) return;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (sphere_distance(a.reps[i], b) <= eps) {
        cand.push_back(a.reps[i]);
        w.push_back(a.weights[i]);
      }
  };
  collect(d1, d2);
  collect(d2, d1);
  return net_directions(cand, w, eps);
}

bool is_weakly_transverse(const DirectionSet& dA, const DirectionSet& dB, double eps) {
  return intersect_direction_sets(dA, dB, eps).empty();
}

std::vector<double> intersection_resolutions(double eps_int) { return {32 * eps_int, 16 * eps_int, 8 * eps_int}; }

json TransversalityResult::to_json() const {
  auto est = [](const DimensionEstimate& e) {
    return json{{"dim", e.value}, {"slope", e.slope}, {"warning", e.warning}, {"counts", table_to_json(e.rows)}};
  };
  return {{"transverse", transverse},
          {"dim_cone_a", dim_cone_a},
          {"dim_cone_b", dim_cone_b},
          {"dim_cone_intersection", dim_cone_intersection},
          {"direction_dims", {{"a", est(est_a)}, {"b", est(est_b)}, {"intersection", est(est_intersection)}}},
          {"warning", warning}};
}

TransversalityResult is_transverse(const DirectionSet& dA, const DirectionSet& dB, int n,
                                   const std::vector<double>& resolutions, double eps_int) {
  if (dA.dim != dB.dim || dA.dim != n) fail(ErrorCode::InvalidArgument, "transversality: dimension mismatch");
  if (eps_int <= 0.0) eps_int = default_intersection_eps(dA, dB);
  const std::vector<double> res = resolutions.empty() ? intersection_resolutions(eps_int) : resolutions;
  const DirectionSet inter = intersect_direction_sets(dA, dB, eps_int);
  TransversalityResult r;
  r.est_a = estimate_dimension(dA, res);
  r.est_b = estimate_dimension(dB, res);
  r.est_intersection = estimate_dimension(inter, res);
  r.dim_cone_a = r.est_a.value + 1;
  r.dim_cone_b = r.est_b.value + 1;
  r.dim_cone_intersection = r.est_intersection.value + 1;
  r.warning = r.est_a.warning || r.est_b.warning || r.est_intersection.warning;
  r.transverse = r.dim_cone_a + r.dim_cone_b - r.dim_cone_intersection == n;
  return r;
}

std::vector<double> HarnessConfig::dimension_resolutions() const {
  return resolutions.empty() ? intersection_resolutions(intersection_eps()) : resolutions;
}

HarnessConfig harness_config_from_json(const json& j, const std::string& path) {
  using namespace jsonu;
  expect_object(j, path, {"schedule", "eps", "eps_int", "ssp_tol", "tol", "dphi_tol", "budget", "resolutions"});
  HarnessConfig c;
  if (j.contains("schedule")) c.schedule = schedule_from_json(j.at("schedule"), child(path, "schedule"));
  c.eps = number_or(j, path, "eps", c.eps);
  c.eps_int = number_or(j, path, "eps_int", c.eps_int);
  c.ssp_tol = number_or(j, path, "ssp_tol", c.ssp_tol);
  c.tol = number_or(j, path, "tol", c.tol);
  c.dphi_tol = number_or(j, path, "dphi_tol", c.dphi_tol);
  c.budget = static_cast<int>(integer_or(j, path, "budget", c.budget));
  if (j.contains("resolutions")) c.resolutions = as_numbers(j.at("resolutions"), child(path, "resolutions"));
  if (!(c.eps > 0.0) || !(c.ssp_tol > 0.0) || !(c.tol > 0.0) || !(c.dphi_tol > 0.0) || c.eps_int < 0.0)
    schema_error(path, "tolerances must be positive");
  return c;
}

std::string to_string(HarnessStatus s) {
  switch (s) {
    case HarnessStatus::Pass:
      return "pass";
    case HarnessStatus::Fail:
      return "fail";
    case HarnessStatus::HypothesesUnmet:
      break;
  }
  return "hypotheses_unmet";
}

GermOracle image_germ(const GermOracle& a, const MapDescriptor& h, std::uint64_t seed) {
  const auto inv = h.inverse();
  if (!inv) fail(ErrorCode::InvalidArgument, "image germ needs an invertible map");
  const auto [expand, contract] = radial_distortion(h, seed);
  return image_oracle(a, h, *inv, expand, contract);
}

namespace {

struct GermAnalysis {
  DirectionSet dirs;
  SSPVerdict ssp;
};

GermAnalysis analyze(const GermOracle& g, const HarnessConfig& cfg) {
  GermAnalysis a{estimate_direction_set(g, cfg.schedule, cfg.eps), {}};
  a.ssp = ssp_distance_test(g, a.dirs, cfg.schedule, cfg.ssp_tol);
  return a;
}

json ssp_json(const GermAnalysis& a) {
  return {{"verdict", to_string(a.ssp.verdict)},
          {"tol", a.ssp.tol},
          {"details", a.ssp.details},
          {"direction_set", direction_set_to_json(a.dirs)}};
}

bool sat(const GermAnalysis& a) { return a.ssp.verdict == Verdict::Satisfied; }

// Largest relative distance from phi(x) to B over A's fine-shell sample.
double image_mismatch(const GermOracle& gA, const GermOracle& gB, const MapDescriptor& phi, const ScaleSchedule& s) {
  double worst = 0.0;
  for (int k = s.first_fine_shell(); k < s.depth(); ++k) {
    const PointCloud pts = gA.sample(s.shell(k));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vec y = phi(pts[i]);
      const double r = norm(y);
      if (r > 0.0) worst = std::max(worst, gB.distance(y) / r);
    }
  }
  return worst;
}

}  // namespace

HarnessReport check_cone_invariance(const GermOracle& gA, const GermOracle& gB, const MapDescriptor& phi,
                                    const HarnessConfig& cfg) {
  if (phi.dim_in() != gA.dim || phi.dim_out() != gB.dim || gA.dim != gB.dim)
    fail(ErrorCode::InvalidArgument, "cone invariance: germ and map dimensions disagree");
  const int n = gA.dim;
  HarnessReport rep;
  const GermAnalysis A = analyze(gA, cfg);
  const GermAnalysis B = analyze(gB, cfg);
  const double mismatch = image_mismatch(gA, gB, phi, cfg.schedule);
  const bool maps_into = mismatch <= cfg.ssp_tol;
  json hyp = {{"A", ssp_json(A)}, {"B", ssp_json(B)}, {"phi_maps_A_into_B", {{"max_relative_distance", mismatch},
                                                                              {"tol", cfg.ssp_tol},
                                                                              {"holds", maps_into}}}};
  rep.body["hypotheses"] = hyp;
  if (!sat(A) || !maps_into) {
    rep.status = HarnessStatus::HypothesesUnmet;
    rep.body["pass"] = nullptr;
    rep.body["mode"] = nullptr;
    rep.body["status"] = to_string(rep.status);
    return rep;
  }

  // Anchors: the origin and the shadows of every A-direction at scales 2^-j.
  PointCloud anchors(n);
  std::set<std::vector<double>> seen;
  auto add_anchor = [&](const Vec& p) {
    if (seen.insert(p).second) anchors.push_back(p);
  };
  add_anchor(Vec(static_cast<std::size_t>(n), 0.0));
  for (std::size_t i = 0; i < A.dirs.size(); ++i)
    for (int j = 0; j <= cfg.budget; ++j) add_anchor(gA.nearest(scaled(A.dirs.reps[i], std::ldexp(1.0, -j))));
  PointCloud images(n);
  for (std::size_t i = 0; i < anchors.size(); ++i) images.push_back(phi(anchors[i]));
  const double L = std::max(empirical_lipschitz(anchors, images), 1e-12) * (1.0 + 1e-9);
  const double Linv = std::max(empirical_lipschitz(images, anchors), 1e-12) * (1.0 + 1e-9);
  const MapDescriptor phi_ext = extend_map(anchors, images, L, ExtensionMode::Inf);
  const MapDescriptor phi_inv_ext = extend_map(images, anchors, Linv, ExtensionMode::Inf);
  const MapDescriptor composite = doubling_composite(phi_ext, phi_inv_ext);
  const double defect = doubling_defect(composite, anchors, images);

  PointCloud grid(2 * n);
  for (std::size_t i = 0; i < A.dirs.size(); ++i) {
    Vec g(static_cast<std::size_t>(2 * n), 0.0);
    std::copy(A.dirs.reps[i].begin(), A.dirs.reps[i].end(), g.begin());
    grid.push_back(g);
  }
  const PseudoDerivative dphi = pseudo_derivative(composite, grid, cfg.dphi_tol, cfg.budget);
  const MapDescriptor dphi_on_a =
      make_compose(make_project_second(n, n), make_compose(dphi.map, make_embed_first(n, n)));
  const DirectionSet image_dirs = map_direction_set(dphi_on_a, A.dirs, cfg.eps);

  const double excess = sphere_excess(image_dirs, B.dirs);
  const double reverse = sphere_excess(B.dirs, image_dirs);
  const double haus = std::max(excess, reverse);
  const bool two_sided = sat(B);
  const bool pass = two_sided ? haus <= cfg.tol : excess <= cfg.tol;

  rep.body["measured"] = {{"sphere_hausdorff", haus},
                          {"excess_dphi_DA_over_DB", excess},
                          {"excess_DB_over_dphi_DA", reverse},
                          {"doubling_defect", defect},
                          {"anchor_count", anchors.size()},
                          {"lipschitz_phi", L},
                          {"lipschitz_phi_inverse", Linv},
                          {"dphi", dphi.report.to_json()},
                          {"dphi_DA", direction_set_to_json(image_dirs)}};
  rep.body["mode"] = two_sided ? "two_sided" : "one_sided";
  rep.body["tol"] = cfg.tol;
  rep.body["theorem_hypotheses_met"] = two_sided;
  if (!dphi.report.converged) rep.body["warning"] = "pseudo-derivative did not converge; last table used";
  if (two_sided) {
    rep.body["pass"] = pass;
    rep.status = pass ? HarnessStatus::Pass : HarnessStatus::Fail;
  } else {
    // B is not SSP: only the inclusion dphi(D(A)) in D(B) is checked, and it
    // is recorded without a verdict on the two-sided statement.
    rep.body["pass"] = nullptr;
    rep.body["one_sided_pass"] = pass;
    rep.status = HarnessStatus::HypothesesUnmet;
  }
  rep.body["status"] = to_string(rep.status);
  rep.evidence = dphi.report.table();
  return rep;
}

HarnessReport check_dimension_equality(const GermOracle& gA, const GermOracle& gB, const MapDescriptor& h,
                                       const HarnessConfig& cfg) {
  if (gA.dim != gB.dim || h.dim_in() != gA.dim || h.dim_out() != gA.dim)
    fail(ErrorCode::InvalidArgument, "dimension equality: germ and map dimensions disagree");
  const int n = gA.dim;
  const GermOracle hA = image_germ(gA, h, kDefaultSeed);
  const GermOracle hB = image_germ(gB, h, kDefaultSeed + 1);
  const GermAnalysis A = analyze(gA, cfg), B = analyze(gB, cfg), HA = analyze(hA, cfg), HB = analyze(hB, cfg);
  HarnessReport rep;
  rep.body["hypotheses"] = {{"A", ssp_json(A)}, {"B", ssp_json(B)}, {"hA", ssp_json(HA)}, {"hB", ssp_json(HB)}};

  const double eps_int = cfg.intersection_eps();
  const auto res = cfg.dimension_resolutions();
  const TransversalityResult before = is_transverse(A.dirs, B.dirs, n, res, eps_int);
  const TransversalityResult after = is_transverse(HA.dirs, HB.dirs, n, res, eps_int);
  const int d0 = before.est_intersection.value;
  const int d1 = after.est_intersection.value;
  rep.body["measured"] = {{"dim_intersection", d0},
                          {"dim_intersection_image", d1},
                          {"transversality", before.to_json()},
                          {"transversality_image", after.to_json()},
                          {"eps_int", eps_int},
                          {"resolutions", res}};
  rep.evidence.columns = {"side", "delta", "count"};
  for (const auto& row : before.est_intersection.rows.rows) rep.evidence.rows.push_back({0.0, row[0], row[1]});
  for (const auto& row : after.est_intersection.rows.rows) rep.evidence.rows.push_back({1.0, row[0], row[1]});

  const bool src = sat(A) && sat(B);
  const bool img = sat(HA) && sat(HB);
  if (!src && !img) {
    rep.status = HarnessStatus::HypothesesUnmet;
    rep.body["pass"] = nullptr;
    rep.body["mode"] = nullptr;
  } else {
    bool pass;
    std::string mode;
    if (src && img) {
      pass = d0 == d1 && before.transverse == after.transverse;
      mode = "equality";
    } else if (src) {
      pass = d1 >= d0;
      mode = "image_at_least_source";
    } else {
      pass = d0 >= d1;
      mode = "source_at_least_image";
    }
    rep.status = pass ? HarnessStatus::Pass : HarnessStatus::Fail;
    rep.body["pass"] = pass;
    rep.body["mode"] = mode;
  }
  if (before.warning || after.warning) rep.body["warning"] = "non-integer dimension slope";
  rep.body["status"] = to_string(rep.status);
  return rep;
}

HarnessReport check_weak_transversality_preservation(const GermOracle& gA, const GermOracle& gB,
                                                     const MapDescriptor& h, const HarnessConfig& cfg) {
  if (gA.dim != gB.dim || h.dim_in() != gA.dim || h.dim_out() != gA.dim)
    fail(ErrorCode::InvalidArgument, "weak transversality: germ and map dimensions disagree");
  const GermOracle hA = image_germ(gA, h, kDefaultSeed);
  const GermOracle hB = image_germ(gB, h, kDefaultSeed + 1);
  const GermAnalysis A = analyze(gA, cfg), B = analyze(gB, cfg), HA = analyze(hA, cfg), HB = analyze(hB, cfg);
  HarnessReport rep;
  rep.body["hypotheses"] = {{"A", ssp_json(A)}, {"B", ssp_json(B)}, {"hA", ssp_json(HA)}, {"hB", ssp_json(HB)}};
  const double eps_int = cfg.intersection_eps();
  const DirectionSet inter = intersect_direction_sets(A.dirs, B.dirs, eps_int);
  const DirectionSet inter_h = intersect_direction_sets(HA.dirs, HB.dirs, eps_int);
  const bool wt = inter.empty(), wt_h = inter_h.empty();
  rep.body["measured"] = {{"weakly_transverse", wt},
                          {"weakly_transverse_image", wt_h},
                          {"intersection", direction_set_to_json(inter)},
                          {"intersection_image", direction_set_to_json(inter_h)},
                          {"eps_int", eps_int}};
  rep.evidence.columns = {"side", "intersection_reps"};
  rep.evidence.rows = {{0.0, static_cast<double>(inter.size())}, {1.0, static_cast<double>(inter_h.size())}};
  if (!((sat(A) || sat(B)) && (sat(HA) || sat(HB)))) {
    rep.status = HarnessStatus::HypothesesUnmet;
    rep.body["pass"] = nullptr;
  } else {
    const bool pass = wt == wt_h;
    rep.status = pass ? HarnessStatus::Pass : HarnessStatus::Fail;
    rep.body["pass"] = pass;
  }
  rep.body["status"] = to_string(rep.status);
  return rep;
}

}  // namespace germlab
