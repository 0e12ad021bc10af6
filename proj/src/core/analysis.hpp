#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "core/direction.hpp"
#include "core/germ.hpp"
#include "core/lipschitz.hpp"
#include "core/map.hpp"
#include "core/sequence.hpp"
#include "core/ssp.hpp"
#include "core/transversality.hpp"

namespace germlab {

/// Process-level classification shared by the C API and the CLI exit codes.
enum class Outcome { Pass = 0, Fail = 1, Inconclusive = 2 };

std::string to_string(Outcome o);
Outcome outcome_of(Verdict v);
Outcome outcome_of(HarnessStatus s);

/// {"analysis", "outcome", "result", "evidence": {columns, rows}, "plots": [...]}
struct AnalysisReport {
  nlohmann::json body = nlohmann::json::object();
  Outcome outcome = Outcome::Pass;
};

// Plot specifications rendered by front ends.
nlohmann::json plot_series(const std::string& label, const std::vector<double>& xs, const std::vector<double>& ys);
nlohmann::json line_plot(const std::string& file, const std::string& title, const std::string& x_label,
                         const std::string& y_label, bool log_y, std::vector<nlohmann::json> series);
nlohmann::json direction_plot(const std::string& file, const std::string& title,
                              const std::vector<std::pair<std::string, const DirectionSet*>>& sets);

/// About `count` distinct indices in [1, n], log-spaced, always including 1 and n.
std::vector<std::int64_t> log_spaced_indices(std::int64_t n, int count);

/// Ratio test, definition oracle and polynomial-boundedness surrogate. The
/// outcome is Pass/Fail when both SSP tests agree on satisfied/violated and
/// Inconclusive otherwise.
AnalysisReport analyze_sequence(const SequenceGerm& a, std::int64_t horizon, double tol, std::int64_t window,
                                int k_max, bool full_evidence = true);

AnalysisReport analyze_germ_ssp(const GermOracle& g, const ScaleSchedule& s, double eps, double tol);

AnalysisReport analyze_direction(const GermOracle& g, const ScaleSchedule& s, double eps,
                                 DirectionSet* out = nullptr);

AnalysisReport analyze_dimension(const DirectionSet& d, const std::vector<double>& resolutions);

/// Anchor document: {"points": [[..]], "values": [[..]] or [..], "L": optional, "mode": optional}.
struct AnchorSet {
  PointCloud points;
  PointCloud values;
  std::optional<double> L;
  std::optional<ExtensionMode> mode;
};
AnchorSet anchors_from_json(const nlohmann::json& j, const std::string& path = "");
PointCloud points_from_json(const nlohmann::json& j, const std::string& path = "");

AnalysisReport analyze_extension(const AnchorSet& anchors, std::optional<double> L, std::optional<ExtensionMode> mode,
                                 const std::optional<PointCloud>& grid, MapDescriptor* out = nullptr);

AnalysisReport analyze_pseudo_derivative(const MapDescriptor& f, const std::optional<PointCloud>& grid, double tol,
                                         int budget);

AnalysisReport from_harness(const std::string& name, const HarnessReport& h);

/// Transversality predicates for A, B; with a map, also the dimension
/// equality and weak-transversality harnesses on (A, B, h).
AnalysisReport analyze_transversality(const GermOracle& gA, const GermOracle& gB, const MapDescriptor* h,
                                      const HarnessConfig& cfg);

}  // namespace germlab
