#pragma once

// Gut-microbiota instance of the hybrid system: generalized Lotka-Volterra
// attribute dynamics, linear Oja-style weight dynamics, an antibiotic
// control window and a bacteriotherapy jump schedule.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphstate/graph.hpp"
#include "graphstate/hybrid.hpp"
#include "graphstate/variable_basis.hpp"

namespace gss {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpeciesParams {
  double growth = 0.0;          // rho, 1/day
  double susceptibility = 0.0;  // epsilon, 1/day

  friend bool operator==(const SpeciesParams&, const SpeciesParams&) = default;
};

struct GLVParams {
  std::map<Label, SpeciesParams> species;
  double alpha = -0.02;
  double beta = -0.1;
  double t_star = 4.0;

  /// Throws ConfigError naming the label when it has no row.
  const SpeciesParams& at(Label label) const;
  bool covers(const BasisSet& basis) const;

  friend bool operator==(const GLVParams&, const GLVParams&) = default;
};

/// The eleven species of the reference community, labelled 1..11.
BasisSet stein_universe();

/// Built-in growth rates and susceptibilities; identical to
/// data/stein_params.csv.
GLVParams default_params();

/// Reads `species_id,growth_rate,susceptibility` rows. Lines starting with
/// '#' and blank lines are skipped; optional `alpha`, `beta` and `t_star`
/// rows override the coefficients. Every label of `required` must appear.
GLVParams parse_params(std::istream& in, const BasisSet& required = stein_universe(),
                       const std::string& source = "<stream>");
GLVParams load_params(const std::filesystem::path& path, const BasisSet& required = stein_universe());

/// x ∘ (rho_B + (a∘w) x + u eps_B).
VBVector glv_attribute_rhs(const VBVector& x, const VBTensor& w, const BoolTensor& a, double u,
                           const GLVParams& p);

/// alpha w∘a + beta x xᵀ on every pair; the solver masks non-edges after
/// each step.
VBTensor weight_rhs(const VBVector& x, const VBTensor& w, const BoolTensor& a, const GLVParams& p);

/// 1 on [0, t_star), 0 afterwards.
double antibiotic_u(double t, double t_star);

/// Flow map reading u[0] as the antibiotic level. Frozen weights give a zero
/// weight derivative.
FlowMap make_glv_flow(GLVParams params, bool freeze_weights);

/// Four-species community the experiments start from.
GraphLiteral initial_graph();
State build_initial_state();

struct ScheduleEntry {
  double t = 0.0;
  InputMode mode = InputMode::Classify;
  GraphLiteral input;
};

struct ScheduleOptions {
  /// Self-interaction given to each newly added species; NaN adds no loop.
  double added_self_loop = -2.0;
  /// Apply each listed interaction in both directions.
  bool symmetric = true;
};

/// Additions at t=190 and t=330, retention of {1,2,4} at t=560.
std::vector<ScheduleEntry> bacteriotherapy_entries(const ScheduleOptions& opts = {});
std::vector<ScheduledInput> bacteriotherapy_schedule(const ScheduleOptions& opts = {});

struct SimSettings {
  double t_max = 700.0;
  double dt = 0.01;
  int k_max = 1000;
  bool freeze_weights = false;
  bool antibiotic = true;
};

struct Scenario {
  std::string name;
  BasisSet universe;
  bool allow_loops = true;
  GraphLiteral initial;
  GLVParams params;
  std::string params_source = "built-in";
  JumpConfig jumps;
  std::vector<ScheduleEntry> schedule;
  SimSettings sim;
};

/// Every reason the scenario cannot run, as readable text.
std::vector<std::string> scenario_violations(const Scenario& s);

struct DimensionPoint {
  double t = 0.0;
  int k = 0;
  std::size_t basis_size = 0;
};

struct RunSummary {
  std::vector<DimensionPoint> dimension_trace;  // one point per segment start
  std::size_t sample_count = 0;
  std::size_t jump_count = 0;
  bool truncated = false;
  double t_end = 0.0;
};

struct RunResult {
  HybridArc arc;
  RunSummary summary;
};

/// Throws ConfigError for an invalid scenario; solver errors propagate.
RunResult run_scenario(const Scenario& s);

/// Adds the reverse of every non-loop edge whose reverse is not listed.
void mirror_edges(GraphLiteral& g);

/// Embeds a graph literal; throws GraphError if it is invalid.
State literal_state(const GraphLiteral& g);

}  // namespace gss
