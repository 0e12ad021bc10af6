#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/analysis.hpp"

namespace germlab {

/// Names accepted by run_demo, in suite order.
const std::vector<std::string>& demo_names();

/// Runs a named example end to end. The outcome is Pass when every check in
/// the report's "checks" list reproduces the expected behavior.
AnalysisReport run_demo(const std::string& name, std::uint64_t seed);

/// Random linear map I + 0.3 G (G Gaussian), redrawn until its singular
/// values lie in [0.5, 2].
MapDescriptor random_bilipschitz_linear(int n, std::uint64_t seed);

}  // namespace germlab
