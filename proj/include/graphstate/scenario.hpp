#pragma once

// Scenario files: JSON with sections universe, allow_loops, initial_state,
// params, jump_config, schedule and sim.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "graphstate/glv.hpp"

namespace gss {

/// Malformed JSON, a wrong type, an unknown key or an unreadable file.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Relative parameter-file paths resolve against `base_dir`. Graph-level
/// problems are not checked here; see scenario_violations().
Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

/// Self-contained JSON for `s` with parameters written inline.
std::string scenario_to_json(const Scenario& s);

}  // namespace gss
