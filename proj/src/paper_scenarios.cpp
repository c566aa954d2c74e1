#include "graphstate/paper_scenarios.hpp"

namespace gss {

namespace {

Scenario base(std::string_view name) {
  Scenario s;
  s.name = std::string(name);
  s.universe = stein_universe();
  s.allow_loops = true;
  s.initial = initial_graph();
  s.params = default_params();
  s.jumps.lambda = 1e-6;
  s.sim.dt = 0.01;
  return s;
}

}  // namespace

const std::vector<std::string_view>& paper_scenario_names() {
  static const std::vector<std::string_view> names = {"fig8a", "fig8b", "fig9a", "fig9b", "fig10"};
  return names;
}

std::optional<Scenario> paper_scenario(std::string_view name) {
  Scenario s = base(name);
  if (name == "fig8a" || name == "fig8b") {
    // Fixed topology and weights, no bacteriotherapy.
    s.sim.antibiotic = name == "fig8b";
    s.sim.freeze_weights = true;
    s.sim.t_max = 200.0;
    return s;
  }
  if (name == "fig9a" || name == "fig9b") {
    s.schedule = bacteriotherapy_entries();
    s.sim.freeze_weights = true;
    s.jumps.enable_jminus = name == "fig9b";
    return s;
  }
  if (name == "fig10") {
    s.schedule = bacteriotherapy_entries();
    s.jumps.enable_jminus = true;
    return s;
  }
  return std::nullopt;
}

}  // namespace gss
