#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/geometry.hpp"
#include "core/germ.hpp"
#include "core/report.hpp"
#include "core/schedule.hpp"

namespace germlab {

class MapDescriptor;

/// Finite eps-net of unit vectors standing in for D(A).
struct DirectionSet {
  int dim = 0;
  PointCloud reps;
  double eps = 0.0;
  std::vector<std::int64_t> weights;

  std::size_t size() const { return reps.size(); }
  bool empty() const { return reps.empty(); }

  /// Unit norms within 1e-12, separation >= eps/2, weights >= 1.
  void validate() const;
};

/// Greedy farthest-point eps-net of unit vectors. The first representative
/// is the lexicographically smallest input, ties go to the lexicographically
/// smaller vector, and selection stops once every input lies within eps of a
/// representative. Each input's weight is credited to its nearest
/// representative.
DirectionSet net_directions(const PointCloud& units, const std::vector<std::int64_t>& weights, double eps);

DirectionSet estimate_direction_set(const GermOracle& g, const ScaleSchedule& s, double eps);

struct Cone {
  DirectionSet base;
  bool contains(VecView x) const;
};

Cone cone_over(const DirectionSet& d);

/// Smallest Euclidean distance from a unit vector to the representatives.
double sphere_distance(VecView u, const DirectionSet& d);

double sphere_hausdorff(const DirectionSet& d1, const DirectionSet& d2);

/// max over reps of d1 of the distance to d2 (the part of d1 not explained by d2).
double sphere_excess(const DirectionSet& d1, const DirectionSet& d2);

struct DimensionEstimate {
  int value = 0;   ///< -1 for the empty direction set
  double slope = 0.0;
  bool warning = false;  ///< slope farther than 0.25 from an integer
  Table rows;            ///< (delta, count)
};

DimensionEstimate estimate_dimension(const DirectionSet& d, const std::vector<double>& resolutions);

/// eps * {16, 8, 4, 2}.
std::vector<double> default_resolutions(double eps);

DirectionSet map_direction_set(const MapDescriptor& f, const DirectionSet& d, double eps);

nlohmann::json direction_set_to_json(const DirectionSet& d);
DirectionSet direction_set_from_json(const nlohmann::json& j, const std::string& path = "");

}  // namespace germlab
