#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "core/direction.hpp"
#include "core/germ.hpp"
#include "core/report.hpp"
#include "core/schedule.hpp"
#include "core/sequence.hpp"

namespace germlab {

inline constexpr double kDefaultRatioTol = 1e-2;
inline constexpr double kDefaultDistanceTol = 5e-2;
inline constexpr std::int64_t kDefaultHorizon = 10000;

/// Slack on the least-squares trend of q_k: slope times window length may
/// exceed zero by this much and still count as non-increasing. It absorbs
/// rounding in germs whose q_k are constant across shells.
inline constexpr double kTrendFloor = 1e-9;

/// Absolute slack, in log space, of the polynomial-boundedness comparison.
inline constexpr double kPolyBoundLogTol = 1e-12;

struct SSPVerdict {
  Verdict verdict = Verdict::Inconclusive;
  double tol = 0.0;
  Table evidence;
  nlohmann::json details = nlohmann::json::object();
};

/// rho_m = a_m / a_{m+1} for m up to the horizon (clamped to the sequence
/// length). Satisfied when max |rho_m - 1| over the last `window` indices is
/// <= tol; violated when that window contains an index with
/// |rho_m - 1| >= 10 tol; inconclusive otherwise. window = 0 means horizon/10.
SSPVerdict ssp_ratio_test(const SequenceGerm& a, std::int64_t horizon, double tol, std::int64_t window = 0);

/// Midpoint probes p_m = (a_m + a_{m+1})/2 with relative gap
/// g_m = min(|p_m - a_m|, |p_m - a_{m+1}|)/p_m; satisfied iff g_m <= tol over
/// the trailing tenth of the horizon, violated otherwise.
SSPVerdict ssp_definition_oracle(const SequenceGerm& a, std::int64_t horizon, double tol);

struct PolyBoundResult {
  bool bounded = false;
  std::optional<int> witness;
  std::int64_t horizon = 0;
  /// First m >= 2 with a_m < 1/m^k for k = 1..k_max (0 when none up to the horizon).
  std::vector<std::int64_t> first_failure;
};

PolyBoundResult polynomial_boundedness_test(const SequenceGerm& a, int k_max, std::int64_t horizon);

/// q_k = distance(t_k a)/t_k per representative a and scale t_k. Satisfied
/// when every rep has trailing-half q_k <= tol with a non-increasing
/// least-squares trend; violated when some rep has a trailing q_k >= 10 tol.
SSPVerdict ssp_distance_test(const GermOracle& g, const DirectionSet& d, const ScaleSchedule& s, double tol);

}  // namespace germlab
