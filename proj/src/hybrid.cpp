#include "graphstate/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gss {

std::string_view to_string(JumpCase c) {
  switch (c) {
    case JumpCase::None: return "none";
    case JumpCase::RiseExternal: return "rise_external";
    case JumpCase::FallExternal: return "fall_external";
    case JumpCase::IntrinsicPlus: return "intrinsic_plus";
    case JumpCase::IntrinsicMinus: return "intrinsic_minus";
  }
  return "unknown";
}

std::string_view to_string(InputMode m) {
  switch (m) {
    case InputMode::Classify: return "classify";
    case InputMode::Add: return "add";
    case InputMode::Retain: return "retain";
  }
  return "unknown";
}

void JumpConfig::check() const {
  if (enable_jminus && !(lambda > 0.0)) throw JumpError("lambda must be positive");
  if (enable_jplus && !(kappa > 0.0)) throw JumpError("kappa must be positive");
  if (enable_jminus && enable_jplus && !(lambda < kappa)) {
    throw JumpError("lambda must be below kappa when both intrinsic sets are enabled");
  }
}

namespace {

bool in_prune_set(const State& x, double lambda) {
  return std::any_of(x.x.coeffs.begin(), x.x.coeffs.end(),
                     [&](double v) { return v > 0.0 && v <= lambda; });
}

bool in_growth_set(const State& x, double kappa) {
  return std::any_of(x.x.coeffs.begin(), x.x.coeffs.end(), [&](double v) { return v >= kappa; });
}

void require_canonical(const State& s, const char* what) {
  if (auto violations = state_violations(s); !violations.empty()) {
    throw JumpError(std::string(what) + " is not canonical: " + violations.front());
  }
}

}  // namespace

JumpCase classify_jump(const State& x, const std::optional<State>& input, const JumpConfig& cfg) {
  if (input && !input->basis().empty()) {
    if (!input->basis().is_subset_of(x.basis())) return JumpCase::RiseExternal;
    return JumpCase::FallExternal;
  }
  if (cfg.enable_jminus && in_prune_set(x, cfg.lambda)) return JumpCase::IntrinsicMinus;
  if (cfg.enable_jplus && in_growth_set(x, cfg.kappa)) return JumpCase::IntrinsicPlus;
  return JumpCase::None;
}

State apply_jump(const State& x, const std::optional<State>& input, JumpCase c,
                 const JumpConfig& cfg) {
  require_canonical(x, "state");
  switch (c) {
    case JumpCase::RiseExternal:
    case JumpCase::FallExternal:
      if (!input) throw JumpError("external jump without an input");
      require_canonical(*input, "jump input");
      return combine(c == JumpCase::RiseExternal ? Combine::Union : Combine::Inter, x, *input);
    case JumpCase::IntrinsicPlus: {
      State added = cfg.addition_provider ? cfg.addition_provider(x) : empty_state();
      require_canonical(added, "added state");
      if (!added.basis().intersect(x.basis()).empty()) {
        throw JumpError("added state overlaps the current basis");
      }
      State perturbation = combine(Combine::Union, scale(cfg.xi_plus, unit_of(x)), added);
      return combine(Combine::Union, x, perturbation);
    }
    case JumpCase::IntrinsicMinus: {
      std::vector<Label> kept;
      for (std::size_t i = 0; i < x.dim(); ++i) {
        if (x.attr(i) > cfg.lambda) kept.push_back(x.basis()[i]);
      }
      return combine(Combine::Inter, x, scale(cfg.xi_minus, unit_on(BasisSet(std::move(kept)))));
    }
    case JumpCase::None: break;
  }
  throw JumpError("no jump to apply");
}

PiecewiseConstantSignal::PiecewiseConstantSignal(std::vector<double> breakpoints,
                                                 std::vector<std::vector<double>> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.size() != breakpoints_.size() + 1) {
    throw std::invalid_argument("signal needs one more piece than breakpoints");
  }
  if (std::adjacent_find(breakpoints_.begin(), breakpoints_.end(), std::greater_equal<>()) !=
      breakpoints_.end()) {
    throw std::invalid_argument("signal breakpoints must be strictly increasing");
  }
  for (const auto& v : values_) {
    if (v.size() != values_.front().size()) {
      throw std::invalid_argument("signal pieces differ in dimension");
    }
  }
}

PiecewiseConstantSignal PiecewiseConstantSignal::constant(std::vector<double> value) {
  return PiecewiseConstantSignal({}, {std::move(value)});
}

std::span<const double> PiecewiseConstantSignal::at(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

State Segment::state_at(std::size_t i) const {
  const Sample& s = samples.at(i);
  return State{VBVector(basis, s.x), VBTensor(PairBasis::square(basis), s.w), a};
}

std::size_t HybridArc::sample_count() const {
  std::size_t n = 0;
  for (const auto& seg : segments) n += seg.samples.size();
  return n;
}

State HybridArc::final_state() const {
  const Segment& seg = segments.back();
  return seg.state_at(seg.samples.size() - 1);
}

namespace {

class Solver {
 public:
  Solver(const FlowMap& flow, const Disturbance& dist, const JumpConfig& cfg,
         const SolverOptions& opts)
      : flow_(flow), dist_(dist), cfg_(cfg), opts_(opts) {}

  HybridArc run(const State& x0) {
    state_ = x0;
    open_segment();
    process_jumps();
    std::size_t steps_since_anchor = 0;
    double anchor = t_;
    while (t_ < opts_.t_max && !stopped_) {
      const double stop = next_stop();
      double t_new = anchor + static_cast<double>(steps_since_anchor + 1) * opts_.dt;
      if (t_new >= stop - 1e-6 * opts_.dt) {
        t_new = stop;
        anchor = stop;
        steps_since_anchor = 0;
      } else {
        ++steps_since_anchor;
      }
      step(t_new - t_);
      t_ = t_new;
      record_sample();
      process_jumps();
    }
    if (stopped_ && t_ < opts_.t_max) arc_.truncated = true;
    return std::move(arc_);
  }

 private:
  double next_stop() const {
    double stop = opts_.t_max;
    if (next_input_ < dist_.schedule.size()) stop = std::min(stop, dist_.schedule[next_input_].t);
    const auto& bps = dist_.u.breakpoints();
    auto it = std::upper_bound(bps.begin(), bps.end(), t_);
    if (it != bps.end()) stop = std::min(stop, *it);
    return stop;
  }

  void evaluate(const State& s, std::span<const double> u, FlowDerivative& out) {
    out = flow_(s, u);
    if (out.dx.size() != s.dim() || out.dw.size() != s.dim() * s.dim()) {
      throw SolverError("flow map returned a derivative on the wrong basis", {t_, k_});
    }
  }

  void step(double h) {
    const std::span<const double> u = dist_.u.at(t_ + 0.5 * h);
    const std::size_t nx = state_.x.coeffs.size();
    const std::size_t nw = state_.w.coeffs.size();
    auto stage_from = [&](const FlowDerivative& k, double c) {
      for (std::size_t i = 0; i < nx; ++i) stage_.x.coeffs[i] = state_.x.coeffs[i] + c * k.dx[i];
      for (std::size_t i = 0; i < nw; ++i) stage_.w.coeffs[i] = state_.w.coeffs[i] + c * k.dw[i];
    };
    stage_ = state_;
    evaluate(state_, u, k1_);
    stage_from(k1_, 0.5 * h);
    evaluate(stage_, u, k2_);
    stage_from(k2_, 0.5 * h);
    evaluate(stage_, u, k3_);
    stage_from(k3_, h);
    evaluate(stage_, u, k4_);
    const double c = h / 6.0;
    for (std::size_t i = 0; i < nx; ++i) {
      state_.x.coeffs[i] += c * (k1_.dx[i] + 2.0 * k2_.dx[i] + 2.0 * k3_.dx[i] + k4_.dx[i]);
    }
    for (std::size_t i = 0; i < nw; ++i) {
      state_.w.coeffs[i] += c * (k1_.dw[i] + 2.0 * k2_.dw[i] + 2.0 * k3_.dw[i] + k4_.dw[i]);
    }
    mask_weights(state_);
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(state_.x.coeffs.begin(), state_.x.coeffs.end(), finite) ||
        !std::all_of(state_.w.coeffs.begin(), state_.w.coeffs.end(), finite)) {
      std::ostringstream msg;
      msg << "non-finite state at t=" << t_ + h << ", k=" << k_;
      throw SolverError(msg.str(), {t_ + h, k_});
    }
  }

  void open_segment() {
    arc_.segments.push_back({k_, state_.basis(), state_.a, {}});
    record_sample();
  }

  void record_sample() {
    arc_.segments.back().samples.push_back({t_, state_.x.coeffs, state_.w.coeffs});
  }

  void jump(JumpCase c, const std::optional<State>& input, std::string note) {
    const std::size_t before = state_.dim();
    state_ = apply_jump(state_, input, c, cfg_);
    ++k_;
    arc_.jumps.push_back({t_, k_, c, before, state_.dim(), std::move(note)});
    open_segment();
    if (k_ >= opts_.k_max) stopped_ = true;
  }

  void process_jumps() {
    while (!stopped_ && next_input_ < dist_.schedule.size() &&
           dist_.schedule[next_input_].t == t_) {
      const ScheduledInput& entry = dist_.schedule[next_input_++];
      const JumpCase classified = classify_jump(state_, entry.input, cfg_);
      JumpCase applied = classified;
      std::string note;
      if (entry.mode == InputMode::Add) applied = JumpCase::RiseExternal;
      if (entry.mode == InputMode::Retain) applied = JumpCase::FallExternal;
      if (classified == JumpCase::FallExternal && entry.input.basis() == state_.basis()) {
        note = "input basis equals state basis; applied as full retention";
      }
      if (classified != JumpCase::RiseExternal && classified != JumpCase::FallExternal) {
        continue;  // empty input: nothing to apply
      }
      if (applied != classified) {
        note = "declared mode '" + std::string(to_string(entry.mode)) +
               "' overrides classification '" + std::string(to_string(classified)) + "'";
      }
      jump(applied, entry.input, std::move(note));
    }
    while (!stopped_) {
      JumpConfig effective = cfg_;
      effective.enable_jplus = cfg_.enable_jplus && !growth_latched_;
      const JumpCase c = classify_jump(state_, std::nullopt, effective);
      if (c == JumpCase::None) break;
      jump(c, std::nullopt, {});
      if (c == JumpCase::IntrinsicPlus) growth_latched_ = true;
    }
    if (!cfg_.enable_jplus || !in_growth_set(state_, cfg_.kappa)) growth_latched_ = false;
  }

  const FlowMap& flow_;
  const Disturbance& dist_;
  const JumpConfig& cfg_;
  const SolverOptions& opts_;

  HybridArc arc_;
  State state_;
  State stage_;
  FlowDerivative k1_, k2_, k3_, k4_;
  double t_ = 0.0;
  int k_ = 0;
  std::size_t next_input_ = 0;
  bool growth_latched_ = false;
  bool stopped_ = false;
};

}  // namespace

HybridArc solve(const FlowMap& flow, const State& x0, const Disturbance& dist,
                const JumpConfig& cfg, const SolverOptions& opts) {
  if (!(opts.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(opts.t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (opts.k_max < 0) throw std::invalid_argument("k_max must be non-negative");
  if (auto violations = state_violations(x0); !violations.empty()) {
    throw std::invalid_argument("initial state is not canonical: " + violations.front());
  }
  cfg.check();
  for (std::size_t i = 0; i < dist.schedule.size(); ++i) {
    if (dist.schedule[i].t < 0.0) throw std::invalid_argument("input scheduled before t=0");
    if (i > 0 && !(dist.schedule[i].t > dist.schedule[i - 1].t)) {
      throw std::invalid_argument("input schedule times must be strictly increasing");
    }
  }
  return Solver(flow, dist, cfg, opts).run(x0);
}

}  // namespace gss
