#include "graphstate/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace gss {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ScenarioError(path + ": " + what);
}

void require_object(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) fail(path, "unknown key '" + key + "'");
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

Label get_label(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0 ||
      j.get<std::int64_t>() > std::numeric_limits<Label>::max()) {
    fail(path, "expected a non-negative integer label");
  }
  return static_cast<Label>(j.get<std::int64_t>());
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

template <typename F>
void optional_field(const json& obj, const char* key, const std::string& path, F&& apply) {
  if (auto it = obj.find(key); it != obj.end()) apply(*it, path + "." + key);
}

GraphLiteral parse_graph(const json& j, const std::string& path, bool allow_loops) {
  require_object(j, path, {"vertices", "edges", "symmetric_edges"});
  GraphLiteral g;
  g.allow_loops = allow_loops;
  if (!j.contains("vertices")) fail(path, "missing 'vertices'");
  const json& vs = j.at("vertices");
  if (!vs.is_array()) fail(path + ".vertices", "expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = path + ".vertices[" + std::to_string(i) + "]";
    require_object(vs[i], p, {"id", "attr"});
    if (!vs[i].contains("id")) fail(p, "missing 'id'");
    GraphLiteral::Vertex v{get_label(vs[i]["id"], p + ".id"), 0.0};
    optional_field(vs[i], "attr", p, [&](const json& x, const std::string& q) { v.attr = get_number(x, q); });
    g.vertices.push_back(v);
  }
  if (auto it = j.find("edges"); it != j.end()) {
    if (!it->is_array()) fail(path + ".edges", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& e = (*it)[i];
      const std::string p = path + ".edges[" + std::to_string(i) + "]";
      require_object(e, p, {"from", "to", "weight"});
      if (!e.contains("from") || !e.contains("to")) fail(p, "missing 'from' or 'to'");
      GraphLiteral::Edge edge{get_label(e["from"], p + ".from"), get_label(e["to"], p + ".to"), 0.0};
      optional_field(e, "weight", p, [&](const json& x, const std::string& q) { edge.weight = get_number(x, q); });
      g.edges.push_back(edge);
    }
  }
  bool symmetric = false;
  optional_field(j, "symmetric_edges", path, [&](const json& x, const std::string& q) { symmetric = get_bool(x, q); });
  if (symmetric) mirror_edges(g);
  return g;
}

GLVParams parse_params_section(const json& j, const std::filesystem::path& base_dir,
                               const BasisSet& universe, std::string& source) {
  const std::string path = "params";
  require_object(j, path, {"file", "species", "alpha", "beta", "t_star"});
  GLVParams p = default_params();
  source = "built-in";
  if (j.contains("file") && j.contains("species")) fail(path, "give either 'file' or 'species'");
  if (auto it = j.find("file"); it != j.end()) {
    if (!it->is_string()) fail(path + ".file", "expected a path string");
    std::filesystem::path file = it->get<std::string>();
    if (file.is_relative()) file = base_dir / file;
    try {
      p = load_params(file, universe);
    } catch (const ConfigError& e) {
      fail(path + ".file", e.what());
    }
    source = file.lexically_normal().string();
  }
  if (auto it = j.find("species"); it != j.end()) {
    if (!it->is_array()) fail(path + ".species", "expected an array");
    p.species.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& s = (*it)[i];
      const std::string q = path + ".species[" + std::to_string(i) + "]";
      require_object(s, q, {"id", "growth_rate", "susceptibility"});
      if (!s.contains("id") || !s.contains("growth_rate") || !s.contains("susceptibility")) {
        fail(q, "needs id, growth_rate and susceptibility");
      }
      const Label id = get_label(s["id"], q + ".id");
      SpeciesParams sp{get_number(s["growth_rate"], q + ".growth_rate"),
                       get_number(s["susceptibility"], q + ".susceptibility")};
      if (!p.species.emplace(id, sp).second) fail(q, "duplicate species " + std::to_string(id));
    }
    source = "inline";
  }
  optional_field(j, "alpha", path, [&](const json& x, const std::string& q) { p.alpha = get_number(x, q); });
  optional_field(j, "beta", path, [&](const json& x, const std::string& q) { p.beta = get_number(x, q); });
  optional_field(j, "t_star", path, [&](const json& x, const std::string& q) { p.t_star = get_number(x, q); });
  return p;
}

JumpConfig parse_jump_config(const json& j) {
  const std::string path = "jump_config";
  require_object(j, path, {"lambda", "kappa", "xi_plus", "xi_minus", "enable_jminus", "enable_jplus"});
  JumpConfig c;
  optional_field(j, "lambda", path, [&](const json& x, const std::string& q) { c.lambda = get_number(x, q); });
  optional_field(j, "kappa", path, [&](const json& x, const std::string& q) {
    c.kappa = x.is_null() ? std::numeric_limits<double>::infinity() : get_number(x, q);
  });
  optional_field(j, "xi_plus", path, [&](const json& x, const std::string& q) { c.xi_plus = get_number(x, q); });
  optional_field(j, "xi_minus", path, [&](const json& x, const std::string& q) { c.xi_minus = get_number(x, q); });
  optional_field(j, "enable_jminus", path, [&](const json& x, const std::string& q) { c.enable_jminus = get_bool(x, q); });
  optional_field(j, "enable_jplus", path, [&](const json& x, const std::string& q) { c.enable_jplus = get_bool(x, q); });
  return c;
}

SimSettings parse_sim(const json& j) {
  const std::string path = "sim";
  require_object(j, path, {"t_max", "dt", "k_max", "freeze_weights", "antibiotic"});
  SimSettings s;
  optional_field(j, "t_max", path, [&](const json& x, const std::string& q) { s.t_max = get_number(x, q); });
  optional_field(j, "dt", path, [&](const json& x, const std::string& q) { s.dt = get_number(x, q); });
  optional_field(j, "k_max", path, [&](const json& x, const std::string& q) { s.k_max = get_int(x, q); });
  optional_field(j, "freeze_weights", path, [&](const json& x, const std::string& q) { s.freeze_weights = get_bool(x, q); });
  optional_field(j, "antibiotic", path, [&](const json& x, const std::string& q) { s.antibiotic = get_bool(x, q); });
  return s;
}

InputMode parse_mode(const json& j, const std::string& path) {
  if (j == "add") return InputMode::Add;
  if (j == "retain") return InputMode::Retain;
  if (j == "classify") return InputMode::Classify;
  fail(path, "mode must be add, retain or classify");
}

json graph_json(const GraphLiteral& g) {
  json vs = json::array();
  for (const auto& v : g.vertices) vs.push_back({{"id", v.id}, {"attr", v.attr}});
  json es = json::array();
  for (const auto& e : g.edges) es.push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight}});
  return {{"vertices", vs}, {"edges", es}};
}

}  // namespace

Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("malformed JSON: ") + e.what());
  }
  require_object(root, "scenario",
                 {"name", "universe", "allow_loops", "initial_state", "params", "jump_config",
                  "schedule", "sim"});
  Scenario s;
  s.universe = stein_universe();
  optional_field(root, "name", "scenario", [&](const json& x, const std::string& q) {
    if (!x.is_string()) fail(q, "expected a string");
    s.name = x.get<std::string>();
  });
  optional_field(root, "universe", "", [&](const json& x, const std::string&) {
    if (!x.is_array()) fail("universe", "expected an array of labels");
    std::vector<Label> labels;
    for (std::size_t i = 0; i < x.size(); ++i) {
      labels.push_back(get_label(x[i], "universe[" + std::to_string(i) + "]"));
    }
    try {
      s.universe = BasisSet(std::move(labels));
    } catch (const BasisError& e) {
      fail("universe", e.what());
    }
  });
  optional_field(root, "allow_loops", "", [&](const json& x, const std::string&) {
    s.allow_loops = get_bool(x, "allow_loops");
  });
  if (!root.contains("initial_state")) fail("scenario", "missing 'initial_state'");
  s.initial = parse_graph(root["initial_state"], "initial_state", s.allow_loops);
  if (root.contains("params")) {
    s.params = parse_params_section(root["params"], base_dir, s.universe, s.params_source);
  } else {
    s.params = default_params();
  }
  if (root.contains("jump_config")) s.jumps = parse_jump_config(root["jump_config"]);
  if (root.contains("sim")) s.sim = parse_sim(root["sim"]);
  if (auto it = root.find("schedule"); it != root.end()) {
    if (!it->is_array()) fail("schedule", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& e = (*it)[i];
      const std::string p = "schedule[" + std::to_string(i) + "]";
      require_object(e, p, {"t", "mode", "input"});
      if (!e.contains("t") || !e.contains("input")) fail(p, "needs 't' and 'input'");
      ScheduleEntry entry;
      entry.t = get_number(e["t"], p + ".t");
      if (e.contains("mode")) entry.mode = parse_mode(e["mode"], p + ".mode");
      entry.input = parse_graph(e["input"], p + ".input", s.allow_loops);
      s.schedule.push_back(std::move(entry));
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  Scenario s = parse_scenario(text.str(), path.parent_path());
  if (s.name.empty()) s.name = path.stem().string();
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  json species = json::array();
  for (const auto& [id, sp] : s.params.species) {
    species.push_back({{"id", id}, {"growth_rate", sp.growth}, {"susceptibility", sp.susceptibility}});
  }
  json jumps = {{"lambda", s.jumps.lambda},
                {"xi_plus", s.jumps.xi_plus},
                {"xi_minus", s.jumps.xi_minus},
                {"enable_jminus", s.jumps.enable_jminus},
                {"enable_jplus", s.jumps.enable_jplus}};
  if (std::isfinite(s.jumps.kappa)) jumps["kappa"] = s.jumps.kappa;
  json schedule = json::array();
  for (const auto& e : s.schedule) {
    schedule.push_back({{"t", e.t}, {"mode", std::string(to_string(e.mode))}, {"input", graph_json(e.input)}});
  }
  json root = {
      {"name", s.name},
      {"universe", s.universe.labels()},
      {"allow_loops", s.allow_loops},
      {"initial_state", graph_json(s.initial)},
      {"params",
       {{"species", species}, {"alpha", s.params.alpha}, {"beta", s.params.beta}, {"t_star", s.params.t_star}}},
      {"jump_config", jumps},
      {"schedule", schedule},
      {"sim",
       {{"t_max", s.sim.t_max},
        {"dt", s.sim.dt},
        {"k_max", s.sim.k_max},
        {"freeze_weights", s.sim.freeze_weights},
        {"antibiotic", s.sim.antibiotic}}},
  };
  return root.dump(2) + "\n";
}

}  // namespace gss
