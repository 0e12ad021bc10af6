#include "core/germ.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

namespace germlab {

bool in_shell(double radius, const Shell& shell) {
  return radius >= shell.inner * (1.0 - kShellRelTol) && radius <= shell.outer * (1.0 + kShellRelTol);
}

SampledGerm::SampledGerm(PointCloud points, double min_scale, double max_scale)
    : points_(std::move(points)), min_scale_(min_scale), max_scale_(max_scale) {
  if (points_.dim() < 1) fail(ErrorCode::InvalidArgument, "sampled germ: dimension must be positive");
  if (!(min_scale > 0.0) || !(max_scale >= min_scale) || !std::isfinite(max_scale))
    fail(ErrorCode::InvalidArgument, "sampled germ: need 0 < min_scale <= max_scale");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double r = norm(points_[i]);
    if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "sampled germ: point " + std::to_string(i) + " is the origin");
    if (!in_shell(r, {min_scale, max_scale}))
      fail(ErrorCode::InvalidArgument,
           "sampled germ: point " + std::to_string(i) + " has norm outside [min_scale, max_scale]");
  }
}

std::vector<int> SampledGerm::uncovered_shells(const ScaleSchedule& s) const {
  std::vector<int> missing;
  std::vector<double> radii(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) radii[i] = norm(points_[i]);
  std::sort(radii.begin(), radii.end());
  for (int k = 0; k < s.depth(); ++k) {
    const Shell sh = s.shell(k);
    if (sh.inner < min_scale_ * (1.0 - kShellRelTol) || sh.outer > max_scale_ * (1.0 + kShellRelTol)) continue;
    auto it = std::lower_bound(radii.begin(), radii.end(), sh.inner * (1.0 - kShellRelTol));
    if (it == radii.end() || !in_shell(*it, sh)) missing.push_back(k);
  }
  return missing;
}

ScaleSchedule SampledGerm::natural_schedule() const {
  const int depth = std::max(2, static_cast<int>(std::floor(std::log2(max_scale_ / min_scale_) + 1e-9)));
  return ScaleSchedule(max_scale_, 0.5, depth);
}

SampledGerm SampledGerm::scaled_by(double lambda) const {
  require(lambda > 0.0, "scale factor must be positive");
  PointCloud out(dim());
  for (std::size_t i = 0; i < points_.size(); ++i) out.push_back(scaled(points_[i], lambda));
  return SampledGerm(std::move(out), min_scale_ * lambda, max_scale_ * lambda);
}

namespace {

struct NormIndex {
  PointCloud points;
  std::vector<double> radii;  // sorted ascending, aligned with `points`

  explicit NormIndex(const PointCloud& src) : points(src.dim()) {
    std::vector<std::size_t> order(src.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> r(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) r[i] = norm(src[i]);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r[a] < r[b]; });
    radii.reserve(order.size());
    for (std::size_t i : order) {
      points.push_back(src[i]);
      radii.push_back(r[i]);
    }
  }

  std::size_t nearest(VecView q, double* best_out) const {
    const double rq = norm(q);
    const auto start = static_cast<std::size_t>(std::lower_bound(radii.begin(), radii.end(), rq) - radii.begin());
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    // Walk outward in both directions; |r_i - |q|| <= |p_i - q| bounds the scan.
    std::size_t up = start;
    std::size_t down = start;
    while (up < radii.size() || down > 0) {
      bool progressed = false;
      if (up < radii.size() && radii[up] - rq < best) {
        const double d = dist(points[up], q);
        if (d < best || (d == best && up < best_i)) {
          best = d;
          best_i = up;
        }
        ++up;
        progressed = true;
      } else {
        up = radii.size();
      }
      if (down > 0 && rq - radii[down - 1] < best) {
        const double d = dist(points[down - 1], q);
        if (d < best || (d == best && down - 1 < best_i)) {
          best = d;
          best_i = down - 1;
        }
        --down;
        progressed = true;
      } else {
        down = 0;
      }
      if (!progressed) break;
    }
    *best_out = best;
    return best_i;
  }
};

}  // namespace

GermOracle sample_to_oracle(const SampledGerm& g) {
  if (g.points().empty()) fail(ErrorCode::InvalidArgument, "sample_to_oracle: empty germ sample");
  auto index = std::make_shared<const NormIndex>(g.points());
  GermOracle o;
  o.dim = g.dim();
  o.distance = [index](VecView q) {
    double d = 0.0;
    index->nearest(q, &d);
    return d;
  };
  o.nearest = [index](VecView q) {
    double d = 0.0;
    return index->points.point(index->nearest(q, &d));
  };
  o.sample = [index](const Shell& sh) {
    PointCloud out(index->points.dim());
    auto lo = std::lower_bound(index->radii.begin(), index->radii.end(), sh.inner * (1.0 - kShellRelTol));
    for (auto it = lo; it != index->radii.end() && in_shell(*it, sh); ++it)
      out.push_back(index->points[static_cast<std::size_t>(it - index->radii.begin())]);
    return out;
  };
  return o;
}

GermOracle union_oracle(const std::vector<GermOracle>& parts) {
  require(!parts.empty(), "union of germs needs at least one part");
  for (const auto& p : parts) require(p.dim == parts.front().dim, "union of germs: dimension mismatch");
  GermOracle o;
  o.dim = parts.front().dim;
  o.distance = [parts](VecView q) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : parts) best = std::min(best, p.distance(q));
    return best;
  };
  o.nearest = [parts](VecView q) {
    double best = std::numeric_limits<double>::infinity();
    Vec out;
    for (const auto& p : parts) {
      Vec c = p.nearest(q);
      const double d = dist(c, q);
      if (d < best) {
        best = d;
        out = std::move(c);
      }
    }
    return out;
  };
  o.sample = [parts](const Shell& sh) {
    PointCloud out(parts.front().dim);
    for (const auto& p : parts) out.append(p.sample(sh));
    return out;
  };
  return o;
}

SampledGerm sample_schedule(const GermOracle& oracle, const ScaleSchedule& s) {
  PointCloud pts(oracle.dim);
  for (int k = 0; k < s.depth(); ++k) pts.append(oracle.sample(s.shell(k)));
  const double lo = s.shell(s.depth() - 1).inner;
  const double hi = s.scale(0);
  if (pts.empty()) fail(ErrorCode::NotPopulated, "germ produced no samples on the schedule");
  return SampledGerm(std::move(pts), lo, hi);
}

}  // namespace germlab
