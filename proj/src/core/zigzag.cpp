#include "core/zigzag.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/germ.hpp"
#include "core/sequence_gen.hpp"

namespace germlab {

CornerLaw parse_corner_law(const std::string& s) {
  if (s == "geometric") return CornerLaw::Geometric;
  if (s == "harmonic") return CornerLaw::Harmonic;
  fail(ErrorCode::InvalidArgument, "unknown zigzag corner law '" + s + "'");
}

std::string to_string(CornerLaw law) { return law == CornerLaw::Geometric ? "geometric" : "harmonic"; }

ZigzagProfile::ZigzagProfile(double c, double ratio, CornerLaw law, int depth)
    : c_(c), ratio_(ratio), law_(law), depth_(depth) {
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorCode::InvalidArgument, "zigzag: c must be positive");
  if (law == CornerLaw::Geometric && !(ratio > 0.0 && ratio < 1.0))
    fail(ErrorCode::InvalidArgument, "zigzag: ratio must lie in (0,1)");
  if (depth < 2 || depth > 40) fail(ErrorCode::InvalidArgument, "zigzag: depth must lie in [2, 40]");
  if (law == CornerLaw::Geometric) {
    last_ = static_cast<std::int64_t>(std::ceil(depth * std::log(2.0) / std::log(1.0 / ratio))) + 2;
  } else {
    last_ = std::int64_t{1} << (depth + 1);
  }
}

double ZigzagProfile::corner_x(std::int64_t k) const {
  if (law_ == CornerLaw::Geometric) return std::pow(ratio_, static_cast<double>(k));
  return 1.0 / static_cast<double>(k + 1);
}

double ZigzagProfile::corner_y(std::int64_t k) const { return (k % 2 == 0) ? 0.0 : c_ * corner_x(k); }

std::int64_t ZigzagProfile::segment_index(double x) const {
  // Largest k in [0, last) with corner_x(k) >= x, i.e. x_{k+1} <= x <= x_k.
  std::int64_t lo = 0;
  std::int64_t hi = last_ - 1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (corner_x(mid) >= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

double ZigzagProfile::operator()(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= corner_x(0)) return corner_y(0);
  const double x_last = corner_x(last_);
  if (x <= x_last) return corner_y(last_) * (x / x_last);
  const std::int64_t k = segment_index(x);
  const double xk = corner_x(k), xk1 = corner_x(k + 1);
  const double yk = corner_y(k), yk1 = corner_y(k + 1);
  return yk + (x - xk) * ((yk1 - yk) / (xk1 - xk));
}

std::optional<double> ZigzagProfile::lipschitz() const {
  if (law_ == CornerLaw::Harmonic) return std::nullopt;
  // Steepest segments run from an odd corner down to the next even corner.
  return c_ / (1.0 - ratio_);
}

namespace {

void segment_nearest(double ax, double ay, double bx, double by, VecView p, double& best, Vec& best_pt) {
  const double dx = bx - ax, dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p[0] - ax) * dx + (p[1] - ay) * dy) / len2, 0.0, 1.0);
  const double qx = ax + t * dx, qy = ay + t * dy;
  const double d = std::hypot(p[0] - qx, p[1] - qy);
  if (d < best) {
    best = d;
    best_pt = {qx, qy};
  }
}

// Distance from p to the convex quadrilateral {x0 <= x <= x1, 0 <= y <= c x}.
double trapezoid_distance(double x0, double x1, double c, VecView p) {
  if (p[0] >= x0 && p[0] <= x1 && p[1] >= 0.0 && p[1] <= c * p[0]) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  Vec scratch;
  segment_nearest(x0, 0.0, x1, 0.0, p, best, scratch);
  segment_nearest(x1, 0.0, x1, c * x1, p, best, scratch);
  segment_nearest(x1, c * x1, x0, c * x0, p, best, scratch);
  segment_nearest(x0, c * x0, x0, 0.0, p, best, scratch);
  return best;
}

}  // namespace

void ZigzagProfile::search(std::int64_t lo, std::int64_t hi, VecView p, double& best, Vec& best_pt) const {
  // Segments between corners lo..hi.
  if (hi - lo <= 4) {
    for (std::int64_t k = lo; k < hi; ++k)
      segment_nearest(corner_x(k), corner_y(k), corner_x(k + 1), corner_y(k + 1), p, best, best_pt);
    return;
  }
  const std::int64_t mid = lo + (hi - lo) / 2;
  const double lb_a = trapezoid_distance(corner_x(mid), corner_x(lo), c_, p);
  const double lb_b = trapezoid_distance(corner_x(hi), corner_x(mid), c_, p);
  if (lb_a <= lb_b) {
    if (lb_a < best) search(lo, mid, p, best, best_pt);
    if (lb_b < best) search(mid, hi, p, best, best_pt);
  } else {
    if (lb_b < best) search(mid, hi, p, best, best_pt);
    if (lb_a < best) search(lo, mid, p, best, best_pt);
  }
}

Vec ZigzagProfile::nearest(VecView p) const {
  require(p.size() == 2, "zigzag germ lives in R^2");
  double best = std::numeric_limits<double>::infinity();
  Vec best_pt{0.0, 0.0};
  // Horizontal ray beyond x_0 = 1.
  const double x0 = corner_x(0);
  {
    const double qx = std::max(p[0], x0);
    const double d = std::hypot(p[0] - qx, p[1]);
    if (d < best) {
      best = d;
      best_pt = {qx, 0.0};
    }
  }
  // Tail segment from the last corner to the origin.
  segment_nearest(0.0, 0.0, corner_x(last_), corner_y(last_), p, best, best_pt);
  search(0, last_, p, best, best_pt);
  return best_pt;
}

double ZigzagProfile::distance(VecView p) const {
  const Vec q = nearest(p);
  return std::hypot(p[0] - q[0], p[1] - q[1]);
}

PointCloud ZigzagProfile::sample(const Shell& shell, int count, std::uint64_t seed) const {
  PointCloud out(2);
  const double lo = std::log(shell.inner / std::sqrt(1.0 + c_ * c_));
  const double hi = std::log(shell.outer);
  const Kronecker seq(1, seed ^ std::bit_cast<std::uint64_t>(shell.outer));
  int accepted = 0;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(16 * count) && accepted < count; ++i) {
    const double x = std::exp(lo + (hi - lo) * seq.at(i, 0));
    const double pt[2] = {x, (*this)(x)};
    if (in_shell(std::hypot(pt[0], pt[1]), shell)) {
      out.push_back(pt);
      ++accepted;
    }
  }
  return out;
}

}  // namespace germlab
