#include "core/json_io.hpp"

#include "core/json_util.hpp"

namespace germlab {

using nlohmann::json;

json schedule_to_json(const ScaleSchedule& s) { return {{"t0", s.t0()}, {"r", s.ratio()}, {"depth", s.depth()}}; }

ScaleSchedule schedule_from_json(const json& j, const std::string& path) {
  using namespace jsonu;
  expect_object(j, path, {"t0", "r", "depth"});
  const auto depth = integer(j, path, "depth");
  if (depth < 2 || depth > 1000) schema_error(child(path, "depth"), "must lie in [2, 1000]");
  return make_schedule(number(j, path, "t0"), number(j, path, "r"), static_cast<int>(depth));
}

json sampled_germ_to_json(const SampledGerm& g) {
  json pts = json::array();
  for (std::size_t i = 0; i < g.points().size(); ++i) pts.push_back(g.points().point(i));
  return {{"dim", g.dim()}, {"points", pts}, {"min_scale", g.min_scale()}, {"max_scale", g.max_scale()}};
}

SampledGerm sampled_germ_from_json(const json& j, const std::string& path) {
  using namespace jsonu;
  expect_object(j, path, {"dim", "points", "min_scale", "max_scale"});
  const auto dim = integer(j, path, "dim");
  if (dim < 1 || dim > 64) schema_error(child(path, "dim"), "must lie in [1, 64]");
  const json& pts = field(j, path, "points");
  const std::string pp = child(path, "points");
  if (!pts.is_array()) schema_error(pp, "expected an array of points");
  PointCloud cloud(static_cast<int>(dim));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto v = as_numbers(pts[i], index(pp, i));
    if (static_cast<std::int64_t>(v.size()) != dim) schema_error(index(pp, i), "point has the wrong dimension");
    cloud.push_back(v);
  }
  return SampledGerm(std::move(cloud), number(j, path, "min_scale"), number(j, path, "max_scale"));
}

}  // namespace germlab
