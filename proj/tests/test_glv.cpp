#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "graphstate/glv.hpp"
#include "graphstate/paper_scenarios.hpp"

using namespace gss;

namespace {

GLVParams one_species(double growth, double susceptibility) {
  GLVParams p;
  p.species[1] = {growth, susceptibility};
  return p;
}

State single(double x, double w) { return make_state({1}, {x}, {w}, {1}); }

}  // namespace

TEST(GlvRhs, AttributeExamples) {
  const GLVParams p = one_species(1.0, -2.0);
  const State zero = single(0.0, -1.0);
  EXPECT_EQ(glv_attribute_rhs(zero.x, zero.w, zero.a, 1.0, p).coeffs[0], 0.0);
  const State s = single(0.5, -1.0);
  EXPECT_DOUBLE_EQ(glv_attribute_rhs(s.x, s.w, s.a, 0.0, p).coeffs[0], 0.25);
  EXPECT_DOUBLE_EQ(glv_attribute_rhs(s.x, s.w, s.a, 1.0, p).coeffs[0], -0.75);
}

TEST(GlvRhs, InteractionUsesTargetRows) {
  GLVParams p;
  p.species[1] = {0.0, 0.0};
  p.species[2] = {0.0, 0.0};
  // Only (1,2) is an edge: species 1 feels species 2, not the reverse.
  const State s = make_state({1, 2}, {1.0, 2.0}, {0, 0.5, 0, 0}, {0, 1, 0, 0});
  const VBVector d = glv_attribute_rhs(s.x, s.w, s.a, 0.0, p);
  EXPECT_DOUBLE_EQ(d.at(1), 1.0);
  EXPECT_EQ(d.at(2), 0.0);
}

TEST(GlvRhs, MissingSpeciesIsAConfigError) {
  const State s = make_state({3}, {1.0}, {0.0}, {1});
  EXPECT_THROW(glv_attribute_rhs(s.x, s.w, s.a, 0.0, one_species(1, 1)), ConfigError);
}

TEST(GlvRhs, WeightExamples) {
  GLVParams p = one_species(0, 0);
  const State zero = single(0.0, 0.0);
  EXPECT_EQ(weight_rhs(zero.x, zero.w, zero.a, p).coeffs[0], 0.0);
  const State s = single(1.0, 1.0);
  EXPECT_DOUBLE_EQ(weight_rhs(s.x, s.w, s.a, p).coeffs[0], -0.12);
  // Non-edges still receive the Hebbian term; the solver masks it.
  const State t = make_state({1}, {1.0}, {0.0}, {0});
  EXPECT_DOUBLE_EQ(weight_rhs(t.x, t.w, t.a, p).coeffs[0], -0.1);
}

TEST(GlvRhs, NonEdgesStayZeroDuringFlow) {
  GLVParams p;
  p.species[1] = {0.5, 0.0};
  p.species[2] = {0.5, 0.0};
  const State x0 = make_state({1, 2}, {1.0, 1.0}, {-1, 0, 0, -1}, {1, 0, 0, 1});
  SolverOptions opts;
  opts.t_max = 1.0;
  const HybridArc arc = solve(make_glv_flow(p, false), x0, {}, {}, opts);
  for (const auto& s : arc.segments[0].samples) {
    EXPECT_EQ(s.w[1], 0.0);
    EXPECT_EQ(s.w[2], 0.0);
  }
  EXPECT_NE(arc.final_state().w.coeffs[0], -1.0);
}

TEST(Antibiotic, WindowIsLeftClosed) {
  EXPECT_EQ(antibiotic_u(2.0, 4.0), 1.0);
  EXPECT_EQ(antibiotic_u(5.0, 4.0), 0.0);
  EXPECT_EQ(antibiotic_u(4.0, 4.0), 0.0);
  EXPECT_EQ(antibiotic_u(0.0, 4.0), 1.0);
}

TEST(InitialState, MatchesTheCommunity) {
  const State s = build_initial_state();
  EXPECT_EQ(s.basis(), (BasisSet{1, 2, 4, 5}));
  EXPECT_EQ(s.x.at(1), 0.7);
  EXPECT_EQ(s.x.at(4), 1.2);
  EXPECT_EQ(s.w.at({1, 1}), -0.21);
  EXPECT_EQ(s.w.at({1, 2}), 0.1);
  EXPECT_EQ(s.w.at({1, 4}), -0.16);
  EXPECT_EQ(s.w.at({1, 5}), -0.014);
  EXPECT_EQ(s.w.at({2, 1}), 0.06);
  EXPECT_EQ(s.w.at({4, 4}), -0.83);
  EXPECT_EQ(s.w.at({5, 2}), 0.0);
  EXPECT_TRUE(s.a.at({5, 2}));
  EXPECT_TRUE(s.a.at({2, 2}));
}

TEST(Schedule, ThreeInputsInOrder) {
  const auto schedule = bacteriotherapy_schedule();
  ASSERT_EQ(schedule.size(), 3u);
  EXPECT_EQ(schedule[0].t, 190.0);
  EXPECT_EQ(schedule[1].t, 330.0);
  EXPECT_EQ(schedule[2].t, 560.0);
  EXPECT_EQ(schedule[0].input.basis(), (BasisSet{1, 2, 4, 5, 9}));
  EXPECT_EQ(schedule[1].input.basis(), (BasisSet{1, 2, 3, 4, 5, 8, 9}));
  EXPECT_EQ(schedule[2].input.basis(), (BasisSet{1, 2, 4}));
  EXPECT_EQ(schedule[1].input.w.at({3, 8}), -0.77);
  EXPECT_EQ(schedule[1].input.w.at({8, 4}), -1.01);
  EXPECT_EQ(schedule[1].input.w.at({9, 8}), 0.44);
  EXPECT_EQ(schedule[1].input.x.at(3), 0.6);
  EXPECT_EQ(schedule[1].input.x.at(8), 0.8);
  EXPECT_EQ(schedule[1].input.x.at(9), 0.0);
  EXPECT_EQ(schedule[0].input.w.at({9, 9}), -2.0);
  EXPECT_TRUE(classify_state(schedule[2].input, {1, 2, 4}).complete);
  EXPECT_TRUE(classify_state(schedule[2].input, {1, 2, 4}).null);
}

TEST(Schedule, ClassificationChain) {
  const auto schedule = bacteriotherapy_schedule();
  JumpConfig cfg;
  State x = build_initial_state();
  const JumpCase expected[3] = {JumpCase::RiseExternal, JumpCase::RiseExternal, JumpCase::FallExternal};
  for (std::size_t i = 0; i < 3; ++i) {
    const JumpCase c = classify_jump(x, schedule[i].input, cfg);
    EXPECT_EQ(c, expected[i]);
    x = apply_jump(x, schedule[i].input, c, cfg);
  }
  EXPECT_EQ(x.basis(), (BasisSet{1, 2, 4}));
}

TEST(Schedule, Options) {
  ScheduleOptions opts;
  opts.symmetric = false;
  opts.added_self_loop = std::nan("");
  const auto entries = bacteriotherapy_entries(opts);
  const State first = literal_state(entries[0].input);
  EXPECT_FALSE(first.a.at({1, 9}));
  EXPECT_TRUE(first.a.at({9, 1}));
  EXPECT_FALSE(first.a.at({9, 9}));
}

TEST(Params, Defaults) {
  const GLVParams p = default_params();
  EXPECT_EQ(p.alpha, -2e-2);
  EXPECT_EQ(p.beta, -1e-1);
  EXPECT_EQ(p.t_star, 4.0);
  EXPECT_TRUE(p.covers(stein_universe()));
  EXPECT_EQ(JumpConfig().lambda, 1e-6);
}

TEST(Params, ShippedFileMatchesBuiltInTable) {
  const GLVParams p = load_params(std::filesystem::path(GRAPHSTATE_SOURCE_DIR) / "data" / "stein_params.csv");
  EXPECT_EQ(p, default_params());
}

TEST(Params, ParseErrors) {
  std::istringstream missing("species_id,growth_rate,susceptibility\n1,0.1,0.2\n");
  try {
    parse_params(missing, {1, 11});
    FAIL() << "expected a missing-species error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("missing species 11"), std::string::npos);
  }
  std::istringstream bad("species_id,growth_rate,susceptibility\n1,abc,0.2\n");
  EXPECT_THROW(parse_params(bad, {1}), ConfigError);
  std::istringstream noheader("1,0.1,0.2\n");
  EXPECT_THROW(parse_params(noheader, {1}), ConfigError);
  std::istringstream dup("species_id,growth_rate,susceptibility\n1,0.1,0.2\n1,0.1,0.2\n");
  EXPECT_THROW(parse_params(dup, {1}), ConfigError);
  EXPECT_THROW(load_params("/nonexistent/params.csv"), ConfigError);
}

TEST(Params, CommentsAndCoefficients) {
  std::istringstream in(
      "# comment\n\nspecies_id,growth_rate,susceptibility\n 2 , 0.5 , -1\nalpha,-0.5\nt_star,3\n");
  const GLVParams p = parse_params(in, {2});
  EXPECT_EQ(p.at(2).growth, 0.5);
  EXPECT_EQ(p.at(2).susceptibility, -1.0);
  EXPECT_EQ(p.alpha, -0.5);
  EXPECT_EQ(p.beta, -0.1);
  EXPECT_EQ(p.t_star, 3.0);
}

TEST(Scenario, NoAntibioticRunHasNoJumps) {
  Scenario s = *paper_scenario("fig8a");
  s.sim.t_max = 20.0;
  const RunResult r = run_scenario(s);
  EXPECT_EQ(r.arc.segments.size(), 1u);
  EXPECT_TRUE(r.arc.jumps.empty());
  ASSERT_EQ(r.summary.dimension_trace.size(), 1u);
  EXPECT_EQ(r.summary.dimension_trace[0].basis_size, 4u);
}

TEST(Scenario, BacteriotherapyDimensionTrace) {
  const RunResult r = run_scenario(*paper_scenario("fig9a"));
  std::vector<std::size_t> dims;
  std::vector<double> times;
  for (const auto& d : r.summary.dimension_trace) {
    dims.push_back(d.basis_size);
    times.push_back(d.t);
  }
  EXPECT_EQ(dims, (std::vector<std::size_t>{4, 5, 7, 3}));
  EXPECT_EQ(times, (std::vector<double>{0, 190, 330, 560}));
  for (const auto& seg : r.arc.segments) {
    for (const auto& sample : seg.samples) {
      for (double v : sample.x) EXPECT_GT(v, 0.0);
      EXPECT_EQ(sample.w, seg.samples.front().w);
    }
  }
}

TEST(Scenario, WeightsEvolveWhenDynamic) {
  Scenario s = *paper_scenario("fig10");
  s.sim.t_max = 10.0;
  s.schedule.clear();
  const RunResult r = run_scenario(s);
  const auto& samples = r.arc.segments[0].samples;
  EXPECT_NE(samples.front().w, samples.back().w);
}

TEST(Scenario, Violations) {
  Scenario s = *paper_scenario("fig9a");
  EXPECT_TRUE(scenario_violations(s).empty());
  s.params.species.erase(11);
  s.sim.dt = 0.0;
  s.schedule[1].t = 100.0;
  s.schedule[0].input.edges.push_back({9, 42, 1.0});
  const auto v = scenario_violations(s);
  auto has = [&](const char* text) {
    return std::any_of(v.begin(), v.end(), [&](const std::string& m) { return m.find(text) != std::string::npos; });
  };
  EXPECT_TRUE(has("missing species 11"));
  EXPECT_TRUE(has("sim.dt"));
  EXPECT_TRUE(has("strictly increasing"));
  EXPECT_TRUE(has("dangling endpoint 42"));
  EXPECT_THROW(run_scenario(s), ConfigError);
}

TEST(Scenario, PaperScenarioNames) {
  for (auto name : paper_scenario_names()) EXPECT_TRUE(paper_scenario(name).has_value());
  EXPECT_FALSE(paper_scenario("fig11").has_value());
  const Scenario b = *paper_scenario("fig9b");
  EXPECT_TRUE(b.jumps.enable_jminus);
  EXPECT_TRUE(b.sim.freeze_weights);
  EXPECT_TRUE(b.sim.antibiotic);
  const Scenario a = *paper_scenario("fig8a");
  EXPECT_FALSE(a.sim.antibiotic);
  EXPECT_TRUE(a.schedule.empty());
}
