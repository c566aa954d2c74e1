#include "graphstate/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "graphstate/export.hpp"
#include "graphstate/paper_scenarios.hpp"
#include "graphstate/scenario.hpp"
#include "json.hpp"

namespace gss {

namespace {

using nlohmann::ordered_json;

struct Overrides {
  std::optional<double> dt;
  std::optional<double> t_max;
  std::optional<double> t_star;
  std::optional<std::string> params_file;
  bool freeze_weights = false;
  bool disable_jminus = false;
  bool disable_jplus = false;
  bool no_antibiotic = false;

  /// Returns how many scheduled inputs fell beyond a shortened horizon.
  std::size_t apply(Scenario& s) const {
    std::size_t dropped = 0;
    if (dt) s.sim.dt = *dt;
    if (t_max) {
      s.sim.t_max = *t_max;
      const auto beyond = std::remove_if(s.schedule.begin(), s.schedule.end(),
                                         [&](const ScheduleEntry& e) { return e.t > *t_max; });
      dropped = static_cast<std::size_t>(s.schedule.end() - beyond);
      s.schedule.erase(beyond, s.schedule.end());
    }
    if (params_file) {
      const GLVParams loaded = load_params(*params_file, s.universe);
      s.params.species = loaded.species;
      s.params_source = *params_file;
    }
    if (t_star) s.params.t_star = *t_star;
    if (freeze_weights) s.sim.freeze_weights = true;
    if (disable_jminus) s.jumps.enable_jminus = false;
    if (disable_jplus) s.jumps.enable_jplus = false;
    if (no_antibiotic) s.sim.antibiotic = false;
    return dropped;
  }

  ordered_json to_json() const {
    ordered_json j = ordered_json::object();
    if (dt) j["dt"] = *dt;
    if (t_max) j["t_max"] = *t_max;
    if (t_star) j["t_star"] = *t_star;
    if (params_file) j["params"] = *params_file;
    if (freeze_weights) j["freeze_weights"] = true;
    if (disable_jminus) j["disable_jminus"] = true;
    if (disable_jplus) j["disable_jplus"] = true;
    if (no_antibiotic) j["no_antibiotic"] = true;
    return j;
  }
};

struct Job {
  std::string source;
  std::filesystem::path output_dir;
  std::optional<Scenario> scenario;  // set for built-in scenarios
  std::filesystem::path scenario_file;
};

struct JobResult {
  int code = exit_code::ok;
  std::string out;
  std::string err;
};

void add_overrides(CLI::App& cmd, Overrides& o, std::size_t& stride) {
  cmd.add_option("--dt", o.dt, "Integration step (days)")->check(CLI::PositiveNumber);
  cmd.add_option("--t-max", o.t_max, "Horizon (days)")->check(CLI::PositiveNumber);
  cmd.add_option("--t-star", o.t_star, "End of the antibiotic window (days)");
  cmd.add_option("--params", o.params_file, "Parameter CSV replacing the scenario's species rows");
  cmd.add_flag("--freeze-weights", o.freeze_weights, "Disable weight dynamics");
  cmd.add_flag("--disable-jminus", o.disable_jminus, "Turn off threshold pruning");
  cmd.add_flag("--disable-jplus", o.disable_jplus, "Turn off growth-triggered addition");
  cmd.add_flag("--no-antibiotic", o.no_antibiotic, "Set the antibiotic control to zero");
  cmd.add_option("--stride", stride, "Write every n-th sample of each segment")
      ->check(CLI::PositiveNumber);
}

ordered_json manifest(const Job& job, const Scenario& s, const Overrides& o, std::size_t dropped,
                      std::size_t stride, const RunResult& r) {
  ordered_json trace = ordered_json::array();
  for (const auto& d : r.summary.dimension_trace) {
    trace.push_back({{"t", d.t}, {"k", d.k}, {"basis_size", d.basis_size}});
  }
  ordered_json jumps = ordered_json::array();
  for (const auto& j : r.arc.jumps) {
    ordered_json row = {{"tau", j.tau},
                        {"k", j.k},
                        {"case", std::string(to_string(j.kind))},
                        {"dim_before", j.dim_before},
                        {"dim_after", j.dim_after}};
    if (!j.note.empty()) row["note"] = j.note;
    jumps.push_back(std::move(row));
  }
  return {{"source", job.source},
          {"params_source", s.params_source},
          {"overrides", o.to_json()},
          {"dropped_schedule_entries", dropped},
          {"stride", stride},
          {"resolved", ordered_json::parse(scenario_to_json(s))},
          {"summary",
           {{"samples", r.summary.sample_count},
            {"jumps", r.summary.jump_count},
            {"truncated", r.summary.truncated},
            {"t_end", r.summary.t_end},
            {"dimension_trace", trace}}},
          {"jump_log", jumps}};
}

JobResult run_job(const Job& job, const Overrides& o, std::size_t stride) {
  JobResult res;
  std::ostringstream out;
  std::ostringstream err;
  Scenario s;
  std::size_t dropped = 0;
  try {
    s = job.scenario ? *job.scenario : load_scenario(job.scenario_file);
    dropped = o.apply(s);
  } catch (const std::exception& e) {
    err << job.source << ": " << e.what() << "\n";
    return {exit_code::validation, out.str(), err.str()};
  }
  if (auto violations = scenario_violations(s); !violations.empty()) {
    for (const auto& v : violations) err << job.source << ": " << v << "\n";
    return {exit_code::validation, out.str(), err.str()};
  }
  try {
    const RunResult r = run_scenario(s);
    export_trajectory(r.arc, job.output_dir, {stride});
    std::ofstream m(job.output_dir / "run_manifest.json", std::ios::binary | std::ios::trunc);
    m << manifest(job, s, o, dropped, stride, r).dump(2) << "\n";
    if (!m) throw ExportError("cannot write run_manifest.json");

    out << job.source << ": " << r.summary.sample_count << " samples, " << r.summary.jump_count
        << " jumps, t_end=" << r.summary.t_end << (r.summary.truncated ? " (truncated)" : "")
        << "\n  dimension:";
    for (const auto& d : r.summary.dimension_trace) out << " " << d.basis_size << "@" << d.t;
    out << "\n";
    for (const auto& j : r.arc.jumps) {
      if (!j.note.empty()) out << "  note: t=" << j.tau << " k=" << j.k << ": " << j.note << "\n";
    }
    out << "  output: " << job.output_dir.string() << "\n";
  } catch (const SolverError& e) {
    err << job.source << ": solver fault at t=" << e.where().t << ", k=" << e.where().k << ": "
        << e.what() << "\n";
    res.code = exit_code::runtime;
  } catch (const std::exception& e) {
    err << job.source << ": " << e.what() << "\n";
    res.code = exit_code::runtime;
  }
  res.out = out.str();
  res.err = err.str();
  return res;
}

std::vector<JobResult> run_parallel(const std::vector<Job>& jobs, const Overrides& o,
                                    std::size_t stride) {
  std::vector<JobResult> results(jobs.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, jobs.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < jobs.size(); i += workers) results[i] = run_job(jobs[i], o, stride);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

int validate_file(const std::string& file, std::ostream& out, std::ostream& err) {
  Scenario s;
  try {
    s = load_scenario(file);
  } catch (const std::exception& e) {
    err << file << ": " << e.what() << "\n";
    return exit_code::validation;
  }
  const auto violations = scenario_violations(s);
  for (const auto& v : violations) err << file << ": " << v << "\n";
  if (!violations.empty()) return exit_code::validation;
  out << file << ": ok (" << s.initial.vertices.size() << " species, " << s.schedule.size()
      << " scheduled inputs)\n";
  return exit_code::ok;
}

std::string default_output_dir() {
  const char* env = std::getenv(kOutputDirEnv);
  return env && *env ? env : "out";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Hybrid graph-state simulator for microbial community dynamics", "graphstate-sim");
  app.require_subcommand(1);

  std::string output_dir = default_output_dir();
  Overrides overrides;

  auto* simulate = app.add_subcommand("simulate", "Run scenario files");
  std::vector<std::string> files;
  std::size_t sim_stride = 1;
  simulate->add_option("scenarios", files, "Scenario JSON files")->required()->check(CLI::ExistingFile);
  simulate->add_option("-o,--output", output_dir, "Output directory");
  add_overrides(*simulate, overrides, sim_stride);

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  std::string validate_path;
  validate->add_option("scenario", validate_path, "Scenario JSON file")->required();

  auto* paper = app.add_subcommand("paper-scenario", "Run a built-in experiment");
  std::string paper_name;
  std::size_t paper_stride = 10;
  std::vector<std::string> names(paper_scenario_names().begin(), paper_scenario_names().end());
  paper->add_option("name", paper_name, "fig8a, fig8b, fig9a, fig9b or fig10")
      ->required()
      ->check(CLI::IsMember(names));
  paper->add_option("-o,--output", output_dir, "Output directory");
  add_overrides(*paper, overrides, paper_stride);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return exit_code::usage;
  }

  if (*validate) return validate_file(validate_path, out, err);

  std::vector<Job> jobs;
  std::size_t stride = 1;
  if (*paper) {
    stride = paper_stride;
    jobs.push_back({paper_name, output_dir, paper_scenario(paper_name), {}});
  } else {
    stride = sim_stride;
    std::map<std::string, int> seen;
    for (const auto& f : files) {
      std::filesystem::path dir = output_dir;
      if (files.size() > 1) {
        std::string stem = std::filesystem::path(f).stem().string();
        if (const int n = seen[stem]++; n > 0) stem += "_" + std::to_string(n);
        dir /= stem;
      }
      jobs.push_back({f, dir, std::nullopt, f});
    }
  }

  int code = exit_code::ok;
  for (const auto& r : run_parallel(jobs, overrides, stride)) {
    out << r.out;
    err << r.err;
    code = std::max(code, r.code);
  }
  return code;
}

}  // namespace gss
