#include "core/schedule.hpp"

#include <cmath>

#include "core/error.hpp"

namespace germlab {

ScaleSchedule::ScaleSchedule(double t0, double r, int depth) : t0_(t0), r_(r), depth_(depth) {
  if (!(t0 > 0.0) || !std::isfinite(t0)) fail(ErrorCode::InvalidArgument, "schedule: t0 must be positive");
  if (!(r > 0.0 && r < 1.0)) fail(ErrorCode::InvalidArgument, "schedule: r must lie in (0,1)");
  if (depth < 2) fail(ErrorCode::InvalidArgument, "schedule: depth must be at least 2");
}

double ScaleSchedule::scale(int k) const { return t0_ * std::pow(r_, k); }

Shell ScaleSchedule::shell(int k) const {
  const double t = scale(k);
  return {t * r_, t};
}

std::vector<double> ScaleSchedule::scales() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(depth_));
  for (int k = 0; k < depth_; ++k) out.push_back(scale(k));
  return out;
}

ScaleSchedule make_schedule(double t0, double r, int depth) { return ScaleSchedule(t0, r, depth); }

}  // namespace germlab
