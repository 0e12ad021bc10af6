#pragma once

#include <string>

#include <json.hpp>

#include "core/germ.hpp"
#include "core/schedule.hpp"

namespace germlab {

nlohmann::json schedule_to_json(const ScaleSchedule& s);
ScaleSchedule schedule_from_json(const nlohmann::json& j, const std::string& path = "");

nlohmann::json sampled_germ_to_json(const SampledGerm& g);
SampledGerm sampled_germ_from_json(const nlohmann::json& j, const std::string& path = "");

}  // namespace germlab
