#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "core/direction.hpp"
#include "core/germ.hpp"
#include "core/map.hpp"
#include "core/report.hpp"
#include "core/schedule.hpp"
#include "core/ssp.hpp"

namespace germlab {

/// Reps of d1 within eps of d2 together with reps of d2 within eps of d1,
/// re-netted at eps. eps <= 0 selects 2 max(d1.eps, d2.eps).
DirectionSet intersect_direction_sets(const DirectionSet& d1, const DirectionSet& d2, double eps = 0.0);

double default_intersection_eps(const DirectionSet& d1, const DirectionSet& d2);

bool is_weakly_transverse(const DirectionSet& dA, const DirectionSet& dB, double eps = 0.0);

/// eps_int * {32, 16, 8}.
std::vector<double> intersection_resolutions(double eps_int);

/// Cone dimensions are direction-set dimensions plus one; the empty
/// direction set spans the origin alone, of dimension 0.
struct TransversalityResult {
  bool transverse = false;
  int dim_cone_a = 0;
  int dim_cone_b = 0;
  int dim_cone_intersection = 0;
  DimensionEstimate est_a;
  DimensionEstimate est_b;
  DimensionEstimate est_intersection;
  bool warning = false;

  nlohmann::json to_json() const;
};

TransversalityResult is_transverse(const DirectionSet& dA, const DirectionSet& dB, int n,
                                   const std::vector<double>& resolutions = {}, double eps_int = 0.0);

struct HarnessConfig {
  ScaleSchedule schedule = ScaleSchedule::standard();
  double eps = 0.025;      ///< direction-set nets
  double eps_int = 0.0;    ///< intersections; 0 selects 2 eps
  double ssp_tol = kDefaultDistanceTol;
  double tol = 0.1;        ///< sphere Hausdorff / excess threshold
  double dphi_tol = 1e-3;  ///< pseudo-derivative acceptance
  int budget = 20;
  std::vector<double> resolutions;  ///< empty selects intersection_resolutions(eps_int)

  double intersection_eps() const { return eps_int > 0.0 ? eps_int : 2.0 * eps; }
  std::vector<double> dimension_resolutions() const;
};

HarnessConfig harness_config_from_json(const nlohmann::json& j, const std::string& path = "");

enum class HarnessStatus { Pass, Fail, HypothesesUnmet };
std::string to_string(HarnessStatus s);

struct HarnessReport {
  HarnessStatus status = HarnessStatus::HypothesesUnmet;
  /// {"hypotheses": {...}, "measured": {...}, "pass": bool|null, ...}
  nlohmann::json body = nlohmann::json::object();
  Table evidence;
};

/// dphi(D(A)) against D(B) where dphi is the pseudo-derivative of the
/// doubling composite built from phi restricted to anchors on A.
/// Both germs SSP: pass iff the two-sided Hausdorff distance is <= tol. Only
/// A SSP: status is hypotheses-unmet and the one-sided excess of dphi(D(A))
/// over D(B) is recorded as "one_sided_pass". A not SSP: hypotheses unmet.
HarnessReport check_cone_invariance(const GermOracle& gA, const GermOracle& gB, const MapDescriptor& phi,
                                    const HarnessConfig& cfg);

/// All four germs SSP: dim(D(hA) n D(hB)) == dim(D(A) n D(B)) and the
/// transversality predicate agrees on both sides. Only one side SSP: the
/// matching inequality. Otherwise hypotheses unmet.
HarnessReport check_dimension_equality(const GermOracle& gA, const GermOracle& gB, const MapDescriptor& h,
                                       const HarnessConfig& cfg);

/// Requires (A or B SSP) and (h(A) or h(B) SSP); passes iff weak
/// transversality agrees on both sides.
HarnessReport check_weak_transversality_preservation(const GermOracle& gA, const GermOracle& gB,
                                                     const MapDescriptor& h, const HarnessConfig& cfg);

/// Image germ h(A) for an invertible h (distortion sampled on the unit ball).
GermOracle image_germ(const GermOracle& a, const MapDescriptor& h, std::uint64_t seed);

}  // namespace germlab
