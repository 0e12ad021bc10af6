#pragma once

#include <utility>
#include <vector>

#include <json.hpp>

#include "core/geometry.hpp"
#include "core/map.hpp"
#include "core/report.hpp"

namespace germlab {

/// Relative slack on L when checking anchor compatibility.
inline constexpr double kLipCompatRelTol = 1e-12;

/// Tolerance of the doubling identity on anchors.
inline constexpr double kDoublingTol = 1e-9;

/// Tolerance on f(0) = 0 required by rescaling.
inline constexpr double kRescaleOriginTol = 1e-12;

using PointPair = std::pair<Vec, Vec>;

/// max ||f(x) - f(y)|| / ||x - y|| over the pairs; a lower bound on the true
/// constant. Throws on a coincident pair.
double estimate_lipschitz(const MapDescriptor& f, const std::vector<PointPair>& pairs);

/// max over anchor pairs of ||v_i - v_j|| / ||a_i - a_j||; 0 for one anchor.
double empirical_lipschitz(const PointCloud& anchors, const PointCloud& values);

/// Scalar extension alpha (inf) or beta (sup). Rejects anchors whose values
/// are not L-Lipschitz.
MapDescriptor whitney_extend(const PointCloud& anchors, const std::vector<double>& values, double L,
                             ExtensionMode mode);

/// Componentwise extension of vector values; the result is sqrt(m) L-Lipschitz.
MapDescriptor extend_map(const PointCloud& anchors, const PointCloud& values, double L, ExtensionMode mode);

MapDescriptor doubling_plus(const MapDescriptor& f);
MapDescriptor doubling_minus(const MapDescriptor& f);

/// Y_-(phi_inv_ext)^{-1} o Y_+(phi_ext) on R^{n+m}.
MapDescriptor doubling_composite(const MapDescriptor& phi_ext, const MapDescriptor& phi_inv_ext);

/// max over anchors x of ||composite(x, 0) - (0, phi(x))||.
double doubling_defect(const MapDescriptor& composite, const PointCloud& anchors, const PointCloud& phi_values);

/// x -> n f(x/n); requires |f(0)| <= 1e-12.
MapDescriptor rescale(const MapDescriptor& f, double n);

struct RescalingReport {
  std::vector<int> indices;              ///< j = 0..budget
  std::vector<double> n_values;          ///< 2^j
  std::vector<double> sup_deviations;    ///< against the chain's last accepted index when j was examined
  std::vector<bool> accepted;
  std::vector<int> accepted_indices;
  int chain_start = 0;
  bool converged = false;
  double tol = 0.0;
  PointCloud grid;
  PointCloud limit_values;

  Table table() const;
  nlohmann::json to_json() const;
};

struct PseudoDerivative {
  MapDescriptor map;
  RescalingReport report;
};

/// 0.05-spacing lattice in the closed unit ball for dim <= 3, otherwise 4096
/// seeded uniform points in the ball.
PointCloud default_grid(int dim);

/// Tables psi_{2^j} on the grid for j = 0..budget. A chain starts at each j
/// in turn and accepts a later index when its sup deviation from the chain's
/// last accepted table is <= tol * 2^{-(acceptances so far)}; three
/// acceptances declare convergence. Without convergence the last table is
/// returned with converged = false.
PseudoDerivative pseudo_derivative(const MapDescriptor& f, const PointCloud& grid, double tol, int budget);

}  // namespace germlab
