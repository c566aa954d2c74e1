#pragma once

// Hybrid flow/jump solver over variable-basis states.
//
// Between jumps the basis and adjacency are frozen and (x, w) follow the flow
// map under a fixed-step RK4 scheme. Jumps come from scheduled external
// inputs or from intrinsic threshold sets, and each increments the jump
// counter k.

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "graphstate/variable_basis.hpp"

namespace gss {

struct HybridTime {
  double t = 0.0;
  int k = 0;
};

enum class JumpCase { None, RiseExternal, FallExternal, IntrinsicPlus, IntrinsicMinus };

std::string_view to_string(JumpCase c);

/// Supplies the state added by an IntrinsicPlus jump. Its basis must be
/// disjoint from the current one.
using AdditionProvider = std::function<State(const State&)>;

class JumpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JumpConfig {
  double kappa = std::numeric_limits<double>::infinity();
  double lambda = 1e-6;
  double xi_plus = 0.0;
  double xi_minus = 0.0;
  bool enable_jplus = false;
  bool enable_jminus = false;
  AdditionProvider addition_provider;  // empty: adds nothing

  /// Throws JumpError on non-positive thresholds or lambda >= kappa.
  void check() const;
};

/// Which jump applies to `x` given an optional external input. External
/// inputs take precedence; among intrinsic sets pruning beats growth.
/// An input on exactly the current basis is classified FallExternal.
JumpCase classify_jump(const State& x, const std::optional<State>& input, const JumpConfig& cfg);

/// Applies the jump of kind `c`. Throws JumpError for None, for a missing
/// input on an external case, or for an addition overlapping the basis.
State apply_jump(const State& x, const std::optional<State>& input, JumpCase c,
                 const JumpConfig& cfg);

/// Left-closed piecewise-constant control: piece i covers
/// [breakpoints[i-1], breakpoints[i]).
class PiecewiseConstantSignal {
 public:
  PiecewiseConstantSignal() : values_{{}} {}
  /// `values.size()` must be `breakpoints.size() + 1`, breakpoints strictly
  /// increasing, every piece the same dimension.
  PiecewiseConstantSignal(std::vector<double> breakpoints, std::vector<std::vector<double>> values);

  static PiecewiseConstantSignal constant(std::vector<double> value);

  std::span<const double> at(double t) const;
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::size_t dimension() const { return values_.front().size(); }

 private:
  std::vector<double> breakpoints_;
  std::vector<std::vector<double>> values_;
};

enum class InputMode { Classify, Add, Retain };

std::string_view to_string(InputMode m);

struct ScheduledInput {
  double t = 0.0;
  State input;
  /// Add/Retain force the union/intersection jump; Classify defers to
  /// classify_jump.
  InputMode mode = InputMode::Classify;
};

struct Disturbance {
  PiecewiseConstantSignal u;
  std::vector<ScheduledInput> schedule;  // strictly increasing times
};

/// Time derivative of (x, w), dense on the state's basis and its square.
struct FlowDerivative {
  std::vector<double> dx;
  std::vector<double> dw;
};

using FlowMap = std::function<FlowDerivative(const State&, std::span<const double> u)>;

struct Sample {
  double t = 0.0;
  std::vector<double> x;
  std::vector<double> w;
};

/// Flow interval [tau_k, tau_{k+1}] with its frozen basis and adjacency.
struct Segment {
  int k = 0;
  BasisSet basis;
  BoolTensor a;
  std::vector<Sample> samples;

  State state_at(std::size_t i) const;
  double t_begin() const { return samples.front().t; }
  double t_end() const { return samples.back().t; }
};

struct JumpRecord {
  double tau = 0.0;
  int k = 0;  // jump counter after the jump
  JumpCase kind = JumpCase::None;
  std::size_t dim_before = 0;
  std::size_t dim_after = 0;
  std::string note;
};

struct HybridArc {
  std::vector<Segment> segments;
  std::vector<JumpRecord> jumps;
  bool truncated = false;  // stopped at k_max before the horizon

  std::size_t sample_count() const;
  State final_state() const;
};

struct SolverOptions {
  double t_max = 1.0;
  int k_max = 1000;
  double dt = 0.01;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, HybridTime where)
      : std::runtime_error(what), where_(where) {}
  HybridTime where() const { return where_; }

 private:
  HybridTime where_;
};

/// Builds the hybrid arc from `x0` up to `opts.t_max` or `opts.k_max` jumps.
/// Control breakpoints and input times are hit exactly; the control is
/// sampled at each step's midpoint, which equals the left-closed value
/// because steps never straddle a breakpoint. Intrinsic sets are checked
/// after every step. IntrinsicPlus fires on entry into its set only.
HybridArc solve(const FlowMap& flow, const State& x0, const Disturbance& dist,
                const JumpConfig& cfg, const SolverOptions& opts);

}  // namespace gss
