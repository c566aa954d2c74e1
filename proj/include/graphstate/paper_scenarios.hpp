#pragma once

// Compiled-in configurations of the antibiotic and bacteriotherapy
// experiments.

#include <optional>
#include <string_view>
#include <vector>

#include "graphstate/glv.hpp"

namespace gss {

/// fig8a, fig8b, fig9a, fig9b, fig10.
const std::vector<std::string_view>& paper_scenario_names();

/// Empty for an unknown name.
std::optional<Scenario> paper_scenario(std::string_view name);

}  // namespace gss
