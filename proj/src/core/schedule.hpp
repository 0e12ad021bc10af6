#pragma once

#include <vector>

namespace germlab {

/// Closed annulus {x : inner <= |x| <= outer}.
struct Shell {
  double inner;
  double outer;
};

/// Geometric ladder t_k = t0 * r^k, k = 0..depth-1. Shell k is [t_k * r, t_k].
class ScaleSchedule {
 public:
  ScaleSchedule(double t0, double r, int depth);

  double t0() const { return t0_; }
  double ratio() const { return r_; }
  int depth() const { return depth_; }

  double scale(int k) const;
  Shell shell(int k) const;
  std::vector<double> scales() const;

  /// Index of the first shell in the fine half (the last ceil(depth/2) shells).
  int first_fine_shell() const { return depth_ - (depth_ + 1) / 2; }

  static ScaleSchedule standard() { return ScaleSchedule(1.0, 0.5, 30); }

 private:
  double t0_;
  double r_;
  int depth_;
};

ScaleSchedule make_schedule(double t0, double r, int depth);

}  // namespace germlab
