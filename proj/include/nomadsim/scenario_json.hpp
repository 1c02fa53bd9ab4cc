#pragma once

#include <stdexcept>
#include <string>

#include "nomadsim/scenario.hpp"

#include <json.hpp>

namespace nomadsim {

// Thrown when a scenario document is not valid JSON or does not match the
// schema (wrong types, unknown keys, missing required keys).
class ScenarioParseError : public std::runtime_error {
  public:
    explicit ScenarioParseError(const std::string& what) : std::runtime_error(what) {}
};

nlohmann::json scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig scenario_from_json(const nlohmann::json& doc);

ScenarioConfig load_scenario(const std::string& path);
void save_scenario(const ScenarioConfig& cfg, const std::string& path);

// Stable 64-bit content hash of the canonical JSON form, as 16 hex digits.
std::string scenario_hash(const ScenarioConfig& cfg);

}  // namespace nomadsim
