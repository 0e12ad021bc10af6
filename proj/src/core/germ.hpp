#pragma once

#include <functional>
#include <vector>

#include "core/geometry.hpp"
#include "core/schedule.hpp"

namespace germlab {

/// Relative slack used when deciding whether a norm lies in a closed shell or
/// in a declared scale range. Points built as exact multiples of shell radii
/// can land one ulp outside after normalization.
inline constexpr double kShellRelTol = 1e-12;

bool in_shell(double radius, const Shell& shell);

/// Finite multiscale sample of a set-germ at the origin.
class SampledGerm {
 public:
  SampledGerm(PointCloud points, double min_scale, double max_scale);

  int dim() const { return points_.dim(); }
  const PointCloud& points() const { return points_; }
  double min_scale() const { return min_scale_; }
  double max_scale() const { return max_scale_; }

  /// Shells of `s` that lie inside [min_scale, max_scale] and contain no point.
  std::vector<int> uncovered_shells(const ScaleSchedule& s) const;
  bool covers(const ScaleSchedule& s) const { return uncovered_shells(s).empty(); }

  /// Dyadic schedule spanning the declared scale range.
  ScaleSchedule natural_schedule() const;

  SampledGerm scaled_by(double lambda) const;

 private:
  PointCloud points_;
  double min_scale_;
  double max_scale_;
};

/// A set-germ known through a distance evaluator, a nearest-point evaluator
/// and a shell sampler.
struct GermOracle {
  int dim = 0;
  std::function<double(VecView)> distance;
  /// A point of the germ realizing (or, for image oracles, bounding) `distance`.
  std::function<Vec(VecView)> nearest;
  std::function<PointCloud(const Shell&)> sample;
};

/// Brute-force oracle over a finite sample. Distance queries are exact
/// nearest-point searches, pruned by the reverse triangle inequality on norms.
GermOracle sample_to_oracle(const SampledGerm& g);

GermOracle union_oracle(const std::vector<GermOracle>& parts);

/// Samples `oracle` on every shell of `s`.
SampledGerm sample_schedule(const GermOracle& oracle, const ScaleSchedule& s);

}  // namespace germlab
