#include "core/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/json_util.hpp"

namespace germlab {

using nlohmann::json;

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    case Outcome::Inconclusive:
      break;
  }
  return "inconclusive";
}

Outcome outcome_of(Verdict v) {
  switch (v) {
    case Verdict::Satisfied:
      return Outcome::Pass;
    case Verdict::Violated:
      return Outcome::Fail;
    case Verdict::Inconclusive:
      break;
  }
  return Outcome::Inconclusive;
}

Outcome outcome_of(HarnessStatus s) {
  switch (s) {
    case HarnessStatus::Pass:
      return Outcome::Pass;
    case HarnessStatus::Fail:
      return Outcome::Fail;
    case HarnessStatus::HypothesesUnmet:
      break;
  }
  return Outcome::Inconclusive;
}

json plot_series(const std::string& label, const std::vector<double>& xs, const std::vector<double>& ys) {
  json pts = json::array();
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (std::isfinite(xs[i]) && std::isfinite(ys[i])) pts.push_back({xs[i], ys[i]});
  }
  return {{"label", label}, {"points", pts}};
}

json line_plot(const std::string& file, const std::string& title, const std::string& x_label,
               const std::string& y_label, bool log_y, std::vector<json> series) {
  return {{"file", file},   {"kind", "lines"}, {"title", title},         {"x_label", x_label},
          {"y_label", y_label}, {"log_y", log_y}, {"series", std::move(series)}};
}

json direction_plot(const std::string& file, const std::string& title,
                    const std::vector<std::pair<std::string, const DirectionSet*>>& sets) {
  json out = json::array();
  int dim = 0;
  for (const auto& [label, d] : sets) {
    json pts = json::array();
    for (std::size_t i = 0; i < d->size(); ++i) pts.push_back(d->reps.point(i));
    out.push_back({{"label", label}, {"points", pts}});
    dim = std::max(dim, d->dim);
  }
  return {{"file", file}, {"kind", "directions"}, {"title", title}, {"dim", dim}, {"sets", out}};
}

std::vector<std::int64_t> log_spaced_indices(std::int64_t n, int count) {
  std::vector<std::int64_t> out;
  if (n < 1) return out;
  count = std::max(count, 2);
  const double step = std::log(static_cast<double>(n)) / (count - 1);
  for (int i = 0; i < count; ++i) {
    const auto m = static_cast<std::int64_t>(std::llround(std::exp(step * i)));
    const std::int64_t c = std::clamp<std::int64_t>(m, 1, n);
    if (out.empty() || out.back() < c) out.push_back(c);
  }
  if (out.back() != n) out.push_back(n);
  return out;
}

namespace {

json base_body(const std::string& name, Outcome o) {
  return {{"analysis", name}, {"outcome", to_string(o)}, {"plots", json::array()}};
}

json verdict_json(const SSPVerdict& v) {
  return {{"verdict", to_string(v.verdict)}, {"tol", v.tol}, {"details", v.details}};
}

json poly_json(const PolyBoundResult& p) {
  json w = p.witness ? json(*p.witness) : json(nullptr);
  return {{"bounded", p.bounded}, {"witness", w}, {"horizon", p.horizon}, {"first_failure", p.first_failure}};
}

}  // namespace

AnalysisReport analyze_sequence(const SequenceGerm& a, std::int64_t horizon, double tol, std::int64_t window,
                                int k_max, bool full_evidence) {
  const SSPVerdict ratio = ssp_ratio_test(a, horizon, tol, window);
  const SSPVerdict oracle = ssp_definition_oracle(a, horizon, tol);
  const PolyBoundResult pb = polynomial_boundedness_test(a, k_max, horizon);

  AnalysisReport r;
  if (ratio.verdict == Verdict::Satisfied && oracle.verdict == Verdict::Satisfied)
    r.outcome = Outcome::Pass;
  else if (ratio.verdict == Verdict::Violated && oracle.verdict == Verdict::Violated)
    r.outcome = Outcome::Fail;
  else
    r.outcome = Outcome::Inconclusive;

  r.body = base_body("ssp_sequence", r.outcome);
  r.body["result"] = {{"ratio_test", verdict_json(ratio)},
                      {"definition_oracle", verdict_json(oracle)},
                      {"polynomially_bounded", poly_json(pb)},
                      {"ssp", r.outcome == Outcome::Pass   ? json(true)
                              : r.outcome == Outcome::Fail ? json(false)
                                                           : json(nullptr)},
                      {"sequence", sequence_to_json(a)}};

  const std::size_t n = ratio.evidence.rows.size();
  Table ev;
  ev.columns = {"m", "a_m", "rho_m", "gap_m"};
  auto row = [&](std::size_t i) {
    const auto& rr = ratio.evidence.rows[i];
    ev.rows.push_back({rr[0], rr[1], rr[2], oracle.evidence.rows[i][1]});
  };
  if (full_evidence) {
    for (std::size_t i = 0; i < n; ++i) row(i);
  } else {
    for (std::int64_t m : log_spaced_indices(static_cast<std::int64_t>(n), 200)) row(static_cast<std::size_t>(m - 1));
  }
  r.body["evidence"] = table_to_json(ev);

  std::vector<double> xs, dev, gap;
  for (std::int64_t m : log_spaced_indices(static_cast<std::int64_t>(n), 400)) {
    const auto& rr = ratio.evidence.rows[static_cast<std::size_t>(m - 1)];
    xs.push_back(rr[0]);
    dev.push_back(std::abs(rr[2] - 1.0));
    gap.push_back(oracle.evidence.rows[static_cast<std::size_t>(m - 1)][1]);
  }
  std::vector<double> tol_line(xs.size(), tol);
  r.body["plots"].push_back(line_plot("ratio.svg", "|rho_m - 1| and midpoint gap", "m", "value", true,
                                      {plot_series("|rho_m - 1|", xs, dev), plot_series("gap_m", xs, gap),
                                       plot_series("tol", xs, tol_line)}));
  return r;
}

AnalysisReport analyze_germ_ssp(const GermOracle& g, const ScaleSchedule& s, double eps, double tol) {
  const DirectionSet d = estimate_direction_set(g, s, eps);
  const SSPVerdict v = ssp_distance_test(g, d, s, tol);
  AnalysisReport r;
  r.outcome = outcome_of(v.verdict);
  r.body = base_body("ssp_germ", r.outcome);
  r.body["result"] = {{"distance_test", verdict_json(v)}, {"direction_set", direction_set_to_json(d)}};
  r.body["evidence"] = table_to_json(v.evidence);

  // One curve per representative, capped so the plot stays legible.
  std::vector<json> series;
  const std::size_t step = std::max<std::size_t>(1, d.size() / 8);
  for (std::size_t i = 0; i < d.size(); i += step) {
    std::vector<double> ks, qs;
    for (const auto& row : v.evidence.rows) {
      if (static_cast<std::size_t>(row[0]) != i) continue;
      ks.push_back(row[1]);
      qs.push_back(std::max(row[3], 1e-18));
    }
    series.push_back(plot_series("rep " + std::to_string(i), ks, qs));
  }
  std::vector<double> ks, tl;
  for (int k = 0; k < s.depth(); ++k) {
    ks.push_back(k);
    tl.push_back(tol);
  }
  series.push_back(plot_series("tol", ks, tl));
  r.body["plots"].push_back(line_plot("q_k.svg", "relative distance q_k = d(t_k u, A)/t_k", "k", "q_k", true, series));
  r.body["plots"].push_back(direction_plot("directions.svg", "estimated D(A)", {{"D(A)", &d}}));
  return r;
}

AnalysisReport analyze_direction(const GermOracle& g, const ScaleSchedule& s, double eps, DirectionSet* out) {
  const DirectionSet d = estimate_direction_set(g, s, eps);
  AnalysisReport r;
  r.body = base_body("direction", r.outcome);
  r.body["result"] = {{"direction_set", direction_set_to_json(d)}, {"size", d.size()}};
  Table ev;
  for (int c = 0; c < d.dim; ++c) ev.columns.push_back("u" + std::to_string(c + 1));
  ev.columns.push_back("weight");
  for (std::size_t i = 0; i < d.size(); ++i) {
    Vec row = d.reps.point(i);
    row.push_back(static_cast<double>(d.weights[i]));
    ev.rows.push_back(row);
  }
  r.body["evidence"] = table_to_json(ev);
  r.body["plots"].push_back(direction_plot("directions.svg", "estimated D(A)", {{"D(A)", &d}}));
  if (out) *out = d;
  return r;
}

AnalysisReport analyze_dimension(const DirectionSet& d, const std::vector<double>& resolutions) {
  const auto res = resolutions.empty() ? default_resolutions(d.eps) : resolutions;
  const DimensionEstimate e = estimate_dimension(d, res);
  AnalysisReport r;
  r.body = base_body("dimension", r.outcome);
  r.body["result"] = {{"dimension", e.value}, {"slope", e.slope}, {"warning", e.warning}, {"resolutions", res}};
  r.body["evidence"] = table_to_json(e.rows);
  std::vector<double> xs, ys;
  for (const auto& row : e.rows.rows) {
    xs.push_back(std::log(1.0 / row[0]));
    ys.push_back(std::log(std::max(row[1], 1.0)));
  }
  r.body["plots"].push_back(
      line_plot("covering.svg", "covering number", "log(1/delta)", "log N(delta)", false, {plot_series("N", xs, ys)}));
  return r;
}

PointCloud points_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) jsonu::schema_error(path, "expected a non-empty array of points");
  PointCloud out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = jsonu::index(path, i);
    Vec v;
    if (j[i].is_number())
      v = {jsonu::as_number(j[i], p)};
    else
      v = jsonu::as_numbers(j[i], p);
    if (v.empty()) jsonu::schema_error(p, "empty point");
    if (i == 0) out = PointCloud(static_cast<int>(v.size()));
    if (static_cast<int>(v.size()) != out.dim()) jsonu::schema_error(p, "point dimension mismatch");
    out.push_back(v);
  }
  return out;
}

AnchorSet anchors_from_json(const json& j, const std::string& path) {
  jsonu::expect_object(j, path, {"points", "values", "L", "mode"});
  AnchorSet a;
  a.points = points_from_json(jsonu::field(j, path, "points"), jsonu::child(path, "points"));
  a.values = points_from_json(jsonu::field(j, path, "values"), jsonu::child(path, "values"));
  if (a.values.size() != a.points.size())
    jsonu::schema_error(jsonu::child(path, "values"), "expected one value per anchor");
  if (j.contains("L")) a.L = jsonu::number(j, path, "L");
  if (j.contains("mode")) {
    const std::string m = jsonu::string(j, path, "mode");
    if (m != "inf" && m != "sup") jsonu::schema_error(jsonu::child(path, "mode"), "expected \"inf\" or \"sup\"");
    a.mode = parse_extension_mode(m);
  }
  return a;
}

AnalysisReport analyze_extension(const AnchorSet& anchors, std::optional<double> L, std::optional<ExtensionMode> mode,
                                 const std::optional<PointCloud>& grid, MapDescriptor* out) {
  const double empirical = empirical_lipschitz(anchors.points, anchors.values);
  const double lip = L ? *L : anchors.L ? *anchors.L : std::max(empirical, 1e-12) * (1.0 + 1e-12);
  const ExtensionMode m = mode ? *mode : anchors.mode ? *anchors.mode : ExtensionMode::Inf;
  const MapDescriptor ext = extend_map(anchors.points, anchors.values, lip, m);

  double restriction = 0.0;
  for (std::size_t i = 0; i < anchors.points.size(); ++i)
    restriction = std::max(restriction, dist(ext(anchors.points[i]), anchors.values[i]));

  const PointCloud g = grid ? *grid : default_grid(anchors.points.dim());
  if (g.dim() != anchors.points.dim()) fail(ErrorCode::InvalidArgument, "grid dimension differs from the anchors");
  Table ev;
  for (int c = 0; c < g.dim(); ++c) ev.columns.push_back("x" + std::to_string(c + 1));
  for (int c = 0; c < anchors.values.dim(); ++c) ev.columns.push_back("f" + std::to_string(c + 1));
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec row = g.point(i);
    const Vec v = ext(g[i]);
    row.insert(row.end(), v.begin(), v.end());
    ev.rows.push_back(row);
  }

  AnalysisReport r;
  r.body = base_body("extend", r.outcome);
  r.body["result"] = {{"L", lip},
                      {"empirical_lipschitz", empirical},
                      {"mode", to_string(m)},
                      {"anchor_count", anchors.points.size()},
                      {"max_anchor_deviation", restriction},
                      {"lip_upper", ext.lip_upper() ? json(*ext.lip_upper()) : json(nullptr)},
                      {"map", map_to_json(ext)}};
  r.body["evidence"] = table_to_json(ev);
  if (g.dim() == 1) {
    std::vector<double> xs, ys, ax, ay;
    for (const auto& row : ev.rows) {
      xs.push_back(row[0]);
      ys.push_back(row[1]);
    }
    for (std::size_t i = 0; i < anchors.points.size(); ++i) {
      ax.push_back(anchors.points[i][0]);
      ay.push_back(anchors.values[i][0]);
    }
    json anchor_series = plot_series("anchors", ax, ay);
    anchor_series["markers"] = true;
    r.body["plots"].push_back(
        line_plot("extension.svg", "extension on the grid", "x", "f(x)", false, {plot_series("extension", xs, ys),
                                                                                  anchor_series}));
  }
  if (out) *out = ext;
  return r;
}

AnalysisReport analyze_pseudo_derivative(const MapDescriptor& f, const std::optional<PointCloud>& grid, double tol,
                                         int budget) {
  const PointCloud g = grid ? *grid : default_grid(f.dim_in());
  const PseudoDerivative pd = pseudo_derivative(f, g, tol, budget);
  AnalysisReport r;
  r.outcome = pd.report.converged ? Outcome::Pass : Outcome::Inconclusive;
  r.body = base_body("pseudo_derivative", r.outcome);
  r.body["result"] = pd.report.to_json();
  r.body["evidence"] = table_to_json(pd.report.table());
  std::vector<double> js, devs;
  for (std::size_t i = 0; i < pd.report.indices.size(); ++i) {
    js.push_back(pd.report.indices[i]);
    devs.push_back(std::max(pd.report.sup_deviations[i], 1e-18));
  }
  r.body["plots"].push_back(
      line_plot("rescaling.svg", "sup deviation of psi_{2^j}", "j", "deviation", true, {plot_series("dev", js, devs)}));
  return r;
}

AnalysisReport from_harness(const std::string& name, const HarnessReport& h) {
  AnalysisReport r;
  r.outcome = outcome_of(h.status);
  r.body = base_body(name, r.outcome);
  r.body["result"] = h.body;
  r.body["evidence"] = table_to_json(h.evidence);

  std::vector<std::pair<std::string, DirectionSet>> sets;
  const json& hyp = h.body.value("hypotheses", json::object());
  for (const char* key : {"A", "B", "hA", "hB"}) {
    if (hyp.contains(key) && hyp[key].contains("direction_set"))
      sets.emplace_back(std::string("D(") + key + ")", direction_set_from_json(hyp[key]["direction_set"]));
  }
  if (h.body.contains("measured") && h.body["measured"].contains("dphi_DA"))
    sets.emplace_back("dphi(D(A))", direction_set_from_json(h.body["measured"]["dphi_DA"]));
  std::vector<std::pair<std::string, const DirectionSet*>> view;
  int dim = 0;
  for (const auto& [label, d] : sets) {
    if (d.empty()) continue;
    if (dim == 0) dim = d.dim;
    if (d.dim == dim) view.emplace_back(label, &d);
  }
  if (!view.empty()) r.body["plots"].push_back(direction_plot("directions.svg", name + ": direction sets", view));
  return r;
}

AnalysisReport analyze_transversality(const GermOracle& gA, const GermOracle& gB, const MapDescriptor* h,
                                      const HarnessConfig& cfg) {
  if (gA.dim != gB.dim) fail(ErrorCode::InvalidArgument, "transversality: germ dimensions disagree");
  const DirectionSet dA = estimate_direction_set(gA, cfg.schedule, cfg.eps);
  const DirectionSet dB = estimate_direction_set(gB, cfg.schedule, cfg.eps);
  const double eps_int = cfg.intersection_eps();
  const TransversalityResult t = is_transverse(dA, dB, gA.dim, cfg.dimension_resolutions(), eps_int);
  const bool weak = is_weakly_transverse(dA, dB, eps_int);
  const DirectionSet inter = intersect_direction_sets(dA, dB, eps_int);

  AnalysisReport r;
  json result = {{"transverse", t.transverse},
                 {"weakly_transverse", weak},
                 {"details", t.to_json()},
                 {"direction_sets", {{"A", direction_set_to_json(dA)}, {"B", direction_set_to_json(dB)}}},
                 {"intersection", direction_set_to_json(inter)},
                 {"eps_int", eps_int}};
  Table ev;
  ev.columns = {"set", "delta", "count"};
  auto add_rows = [&](double tag, const DimensionEstimate& e) {
    for (const auto& row : e.rows.rows) ev.rows.push_back({tag, row[0], row[1]});
  };
  add_rows(0.0, t.est_a);
  add_rows(1.0, t.est_b);
  add_rows(2.0, t.est_intersection);

  if (h) {
    const HarnessReport de = check_dimension_equality(gA, gB, *h, cfg);
    const HarnessReport wt = check_weak_transversality_preservation(gA, gB, *h, cfg);
    result["dimension_equality"] = de.body;
    result["weak_transversality_preservation"] = wt.body;
    if (de.status == HarnessStatus::Fail || wt.status == HarnessStatus::Fail)
      r.outcome = Outcome::Fail;
    else if (de.status == HarnessStatus::Pass && wt.status == HarnessStatus::Pass)
      r.outcome = Outcome::Pass;
    else
      r.outcome = Outcome::Inconclusive;
  }
  r.body = base_body("transversality", r.outcome);
  r.body["result"] = result;
  r.body["evidence"] = table_to_json(ev);
  std::vector<std::pair<std::string, const DirectionSet*>> view = {{"D(A)", &dA}, {"D(B)", &dB}};
  if (!inter.empty()) view.emplace_back("D(A) n D(B)", &inter);
  r.body["plots"].push_back(direction_plot("directions.svg", "direction sets", view));
  return r;
}

}  // namespace germlab
