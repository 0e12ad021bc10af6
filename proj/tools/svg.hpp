#pragma once

#include <string>

#include <json.hpp>

namespace germlab_cli {

/// Renders one plot specification from a report ("lines" or "directions").
/// Returns an empty string for specs that have nothing to draw.
std::string render_svg(const nlohmann::json& plot, const std::string& banner);

}  // namespace germlab_cli
