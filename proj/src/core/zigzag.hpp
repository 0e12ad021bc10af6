#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "core/geometry.hpp"
#include "core/schedule.hpp"

namespace germlab {

enum class CornerLaw {
  Geometric,  ///< x_k = ratio^k; union with the x-axis is a chain of similar triangles
  Harmonic,   ///< x_k = 1/(k+1); consecutive corner ratio tends to 1
};

CornerLaw parse_corner_law(const std::string& s);
std::string to_string(CornerLaw law);

/// Piecewise-linear profile f >= 0 on [0, inf) whose graph oscillates between
/// the positive x-axis (even corners) and the half line y = c x (odd corners).
/// f is 0 beyond x_0 = 1 and interpolates linearly to the origin below the
/// last corner.
class ZigzagProfile {
 public:
  ZigzagProfile(double c, double ratio, CornerLaw law, int depth);

  double c() const { return c_; }
  double ratio() const { return ratio_; }
  CornerLaw law() const { return law_; }
  int depth() const { return depth_; }

  std::int64_t last_corner() const { return last_; }
  double corner_x(std::int64_t k) const;
  double corner_y(std::int64_t k) const;

  /// f(x); f(x) = 0 for x <= 0.
  double operator()(double x) const;

  /// Largest segment slope; empty when the slopes are unbounded (harmonic law).
  std::optional<double> lipschitz() const;

  /// Distance from p in R^2 to the graph {(x, f(x)) : x >= 0}.
  double distance(VecView p) const;
  Vec nearest(VecView p) const;

  /// Graph points in the closed shell, at most `count` of them.
  PointCloud sample(const Shell& shell, int count, std::uint64_t seed) const;

 private:
  std::int64_t segment_index(double x) const;
  void search(std::int64_t lo, std::int64_t hi, VecView p, double& best, Vec& best_pt) const;

  double c_;
  double ratio_;
  CornerLaw law_;
  int depth_;
  std::int64_t last_;
};

}  // namespace germlab
