#include "core/direction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "core/error.hpp"
#include "core/json_util.hpp"
#include "core/map.hpp"

namespace germlab {

void DirectionSet::validate() const {
  if (dim < 1) fail(ErrorCode::InvalidArgument, "direction set: dimension must be positive");
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "direction set: eps must be positive");
  if (reps.dim() != dim && !reps.empty()) fail(ErrorCode::InvalidArgument, "direction set: rep dimension mismatch");
  if (weights.size() != reps.size()) fail(ErrorCode::InvalidArgument, "direction set: one weight per rep required");
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (std::abs(norm(reps[i]) - 1.0) > 1e-12)
      fail(ErrorCode::InvalidArgument, "direction set: rep " + std::to_string(i) + " is not a unit vector");
    if (weights[i] < 1) fail(ErrorCode::InvalidArgument, "direction set: weights must be >= 1");
    for (std::size_t j = 0; j < i; ++j)
      if (dist(reps[i], reps[j]) < eps / 2)
        fail(ErrorCode::InvalidArgument, "direction set: reps closer than eps/2");
  }
}

DirectionSet net_directions(const PointCloud& units, const std::vector<std::int64_t>& weights, double eps) {
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "net resolution eps must be positive");
  require(weights.size() == units.size(), "one weight per direction required");
  DirectionSet out;
  out.dim = units.dim();
  out.eps = eps;
  out.reps = PointCloud(units.dim());
  const std::size_t n = units.size();
  if (n == 0) return out;

  auto better = [&](std::size_t i, double di, std::size_t j, double dj) {
    return di > dj || (di == dj && lex_less(units[i], units[j]));
  };

  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (lex_less(units[i], units[start])) start = i;

  std::vector<std::size_t> chosen{start};
  std::vector<double> mind(n);
  for (std::size_t i = 0; i < n; ++i) mind[i] = dist(units[i], units[start]);
  for (;;) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (better(i, mind[i], far, mind[far])) far = i;
    if (mind[far] < eps) break;
    chosen.push_back(far);
    for (std::size_t i = 0; i < n; ++i) mind[i] = std::min(mind[i], dist(units[i], units[far]));
  }

  out.weights.assign(chosen.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < chosen.size(); ++c) {
      const double d = dist(units[i], units[chosen[c]]);
      if (d < bd) {
        bd = d;
        best = c;
      }
    }
    out.weights[best] += weights[i];
  }
  for (std::size_t c : chosen) out.reps.push_back(units[c]);
  return out;
}

DirectionSet estimate_direction_set(const GermOracle& g, const ScaleSchedule& s, double eps) {
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "eps must be positive");
  PointCloud units(g.dim);
  for (int k = s.first_fine_shell(); k < s.depth(); ++k) {
    const PointCloud pts = g.sample(s.shell(k));
    for (std::size_t i = 0; i < pts.size(); ++i) units.push_back(normalized(pts[i]));
  }
  if (units.empty()) fail(ErrorCode::NotPopulated, "germ not populated at fine scales");
  return net_directions(units, std::vector<std::int64_t>(units.size(), 1), eps);
}

double sphere_distance(VecView u, const DirectionSet& d) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.size(); ++i) best = std::min(best, dist(u, d.reps[i]));
  return best;
}

bool Cone::contains(VecView x) const {
  const double n = norm(x);
  if (n == 0.0) return true;
  return sphere_distance(scaled(x, 1.0 / n), base) <= base.eps;
}

Cone cone_over(const DirectionSet& d) {
  if (d.empty()) fail(ErrorCode::InvalidArgument, "cone over an empty direction set");
  return Cone{d};
}

double sphere_excess(const DirectionSet& d1, const DirectionSet& d2) {
  if (d1.dim != d2.dim) fail(ErrorCode::InvalidArgument, "direction sets have different dimensions");
  if (d1.empty() || d2.empty()) fail(ErrorCode::InvalidArgument, "direction set is empty");
  double worst = 0.0;
  for (std::size_t i = 0; i < d1.size(); ++i) worst = std::max(worst, sphere_distance(d1.reps[i], d2));
  return worst;
}

double sphere_hausdorff(const DirectionSet& d1, const DirectionSet& d2) {
  return std::max(sphere_excess(d1, d2), sphere_excess(d2, d1));
}

std::vector<double> default_resolutions(double eps) { return {16 * eps, 8 * eps, 4 * eps, 2 * eps}; }

DimensionEstimate estimate_dimension(const DirectionSet& d, const std::vector<double>& resolutions) {
  if (resolutions.size() < 2) fail(ErrorCode::InvalidArgument, "dimension estimate needs at least 2 resolutions");
  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    if (!(resolutions[i] > d.eps)) fail(ErrorCode::InvalidArgument, "resolutions must exceed the net eps");
    if (i > 0 && !(resolutions[i] < resolutions[i - 1]))
      fail(ErrorCode::InvalidArgument, "resolutions must be strictly decreasing");
  }
  DimensionEstimate est;
  est.rows.columns = {"delta", "count"};
  if (d.empty()) {
    est.value = -1;
    for (double delta : resolutions) est.rows.rows.push_back({delta, 0.0});
    return est;
  }
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(d.reps[a], d.reps[b]); });

  std::vector<double> xs, ys;
  for (double delta : resolutions) {
    std::vector<char> covered(d.size(), 0);
    std::size_t count = 0;
    for (std::size_t i : order) {
      if (covered[i]) continue;
      ++count;
      for (std::size_t j = 0; j < d.size(); ++j)
        if (!covered[j] && dist(d.reps[i], d.reps[j]) <= delta) covered[j] = 1;
    }
    est.rows.rows.push_back({delta, static_cast<double>(count)});
    xs.push_back(std::log(1.0 / delta));
    ys.push_back(std::log(static_cast<double>(count)));
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  est.slope = sxy / sxx;
  const double rounded = std::round(est.slope);
  est.warning = std::abs(est.slope - rounded) > 0.25;
  est.value = static_cast<int>(std::clamp(rounded, 0.0, static_cast<double>(d.dim - 1)));
  return est;
}

DirectionSet map_direction_set(const MapDescriptor& f, const DirectionSet& d, double eps) {
  if (f.dim_in() != d.dim) fail(ErrorCode::InvalidArgument, "map input dimension does not match the direction set");
  PointCloud units(f.dim_out());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Vec y = f(d.reps[i]);
    const double n = norm(y);
    if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorCode::Domain, "map collapses a direction");
    units.push_back(scaled(y, 1.0 / n));
  }
  return net_directions(units, d.weights, eps);
}

nlohmann::json direction_set_to_json(const DirectionSet& d) {
  nlohmann::json reps = nlohmann::json::array();
  for (std::size_t i = 0; i < d.size(); ++i) reps.push_back(d.reps.point(i));
  return {{"dim", d.dim}, {"eps", d.eps}, {"reps", reps}, {"weights", d.weights}};
}

DirectionSet direction_set_from_json(const nlohmann::json& j, const std::string& path) {
  using namespace jsonu;
  expect_object(j, path, {"dim", "eps", "reps", "weights"});
  DirectionSet d;
  d.dim = static_cast<int>(integer(j, path, "dim"));
  if (d.dim < 1) schema_error(child(path, "dim"), "must be positive");
  d.eps = number(j, path, "eps");
  d.reps = PointCloud(d.dim);
  const auto& reps = field(j, path, "reps");
  const std::string rp = child(path, "reps");
  if (!reps.is_array()) schema_error(rp, "expected an array");
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto v = as_numbers(reps[i], index(rp, i));
    if (static_cast<int>(v.size()) != d.dim) schema_error(index(rp, i), "wrong length");
    d.reps.push_back(v);
  }
  if (j.contains("weights")) {
    const auto& w = j.at("weights");
    const std::string wp = child(path, "weights");
    if (!w.is_array()) schema_error(wp, "expected an array");
    for (std::size_t i = 0; i < w.size(); ++i) d.weights.push_back(as_integer(w[i], index(wp, i)));
  } else {
    d.weights.assign(d.reps.size(), 1);
  }
  d.validate();
  return d;
}

}  // namespace germlab
