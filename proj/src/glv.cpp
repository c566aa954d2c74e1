#include "graphstate/glv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "graphstate/embedding.hpp"

namespace gss {

namespace {

// Growth rates and antibiotic susceptibilities of the eleven-species
// community, transcribed from the published parameter figure.
constexpr double kGrowth[11] = {0.368, 0.310, 0.356, 0.540, 0.709, 0.471,
                                0.230, 0.830, 0.392, 0.291, 0.324};
constexpr double kSusceptibility[11] = {-3.29, -3.04, -2.09, 0.01, -3.89, 0.36,
                                        1.63,  0.0,   -2.29, 0.01, -0.40};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

void check_basis(const VBVector& x, const VBTensor& w, const BoolTensor& a) {
  if (!w.basis.is_square_of(x.basis) || !(a.basis == w.basis) ||
      w.coeffs.size() != x.coeffs.size() * x.coeffs.size()) {
    throw BasisError("gLV operands are not on a common basis and its square");
  }
}

void attribute_kernel(const BasisSet& basis, std::span<const double> x, std::span<const double> w,
                      std::span<const std::uint8_t> a, double u, const GLVParams& p,
                      std::vector<double>& dx) {
  const std::size_t n = x.size();
  dx.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const SpeciesParams& sp = p.at(basis[i]);
    double rate = sp.growth + u * sp.susceptibility;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i * n + j]) rate += w[i * n + j] * x[j];
    }
    dx[i] = x[i] * rate;
  }
}

void weight_kernel(std::span<const double> x, std::span<const double> w,
                   std::span<const std::uint8_t> a, const GLVParams& p, std::vector<double>& dw) {
  const std::size_t n = x.size();
  dw.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t idx = i * n + j;
      dw[idx] = (a[idx] ? p.alpha * w[idx] : 0.0) + p.beta * x[i] * x[j];
    }
  }
}

GraphLiteral::Vertex vertex(Label id, double attr) { return {id, attr}; }

}  // namespace

const SpeciesParams& GLVParams::at(Label label) const {
  auto it = species.find(label);
  if (it == species.end()) {
    throw ConfigError("no growth/susceptibility parameters for species " + std::to_string(label));
  }
  return it->second;
}

bool GLVParams::covers(const BasisSet& basis) const {
  return std::all_of(basis.begin(), basis.end(), [&](Label l) { return species.contains(l); });
}

BasisSet stein_universe() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}; }

GLVParams default_params() {
  GLVParams p;
  for (Label l = 1; l <= 11; ++l) p.species[l] = {kGrowth[l - 1], kSusceptibility[l - 1]};
  return p;
}

GLVParams parse_params(std::istream& in, const BasisSet& required, const std::string& source) {
  GLVParams p;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  auto fail = [&](const std::string& what) {
    throw ConfigError(source + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split(view);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() >= 3 && fields[0] == "species_id" && fields[1] == "growth_rate" &&
          fields[2] == "susceptibility") {
        continue;
      }
      fail("expected header species_id,growth_rate,susceptibility");
    }
    if (fields[0] == "alpha" || fields[0] == "beta" || fields[0] == "t_star") {
      double value = 0.0;
      if (fields.size() < 2 || !parse_number(fields[1], value)) {
        fail("non-numeric value for " + std::string(fields[0]));
      }
      (fields[0] == "alpha" ? p.alpha : fields[0] == "beta" ? p.beta : p.t_star) = value;
      continue;
    }
    if (fields.size() != 3) fail("expected 3 fields, got " + std::to_string(fields.size()));
    Label id = 0;
    SpeciesParams sp;
    if (!parse_number(fields[0], id)) fail("non-numeric species_id '" + std::string(fields[0]) + "'");
    if (!parse_number(fields[1], sp.growth) || !std::isfinite(sp.growth)) {
      fail("non-numeric growth_rate '" + std::string(fields[1]) + "'");
    }
    if (!parse_number(fields[2], sp.susceptibility) || !std::isfinite(sp.susceptibility)) {
      fail("non-numeric susceptibility '" + std::string(fields[2]) + "'");
    }
    if (!p.species.emplace(id, sp).second) fail("duplicate species " + std::to_string(id));
  }
  if (!header_seen) throw ConfigError(source + ": empty parameter file");
  for (Label l : required) {
    if (!p.species.contains(l)) throw ConfigError(source + ": missing species " + std::to_string(l));
  }
  return p;
}

GLVParams load_params(const std::filesystem::path& path, const BasisSet& required) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open parameter file " + path.string());
  return parse_params(in, required, path.string());
}

VBVector glv_attribute_rhs(const VBVector& x, const VBTensor& w, const BoolTensor& a, double u,
                           const GLVParams& p) {
  check_basis(x, w, a);
  std::vector<double> dx;
  attribute_kernel(x.basis, x.coeffs, w.coeffs, a.coeffs, u, p, dx);
  return VBVector(x.basis, std::move(dx));
}

VBTensor weight_rhs(const VBVector& x, const VBTensor& w, const BoolTensor& a, const GLVParams& p) {
  check_basis(x, w, a);
  std::vector<double> dw;
  weight_kernel(x.coeffs, w.coeffs, a.coeffs, p, dw);
  return VBTensor(w.basis, std::move(dw));
}

double antibiotic_u(double t, double t_star) { return t < t_star ? 1.0 : 0.0; }

FlowMap make_glv_flow(GLVParams params, bool freeze_weights) {
  return [p = std::move(params), freeze_weights](const State& s, std::span<const double> u) {
    const double level = u.empty() ? 0.0 : u[0];
    FlowDerivative d;
    attribute_kernel(s.basis(), s.x.coeffs, s.w.coeffs, s.a.coeffs, level, p, d.dx);
    if (freeze_weights) {
      d.dw.assign(s.w.coeffs.size(), 0.0);
    } else {
      weight_kernel(s.x.coeffs, s.w.coeffs, s.a.coeffs, p, d.dw);
    }
    return d;
  };
}

GraphLiteral initial_graph() {
  const Label ids[4] = {1, 2, 4, 5};
  const double x[4] = {0.7, 0.3, 1.2, 1.3};
  const double w[4][4] = {{-0.21, 0.1, -0.16, -0.014},
                          {0.06, -0.1, -0.15, -0.19},
                          {0.22, 0.14, -0.83, -0.22},
                          {-0.18, 0.0, -0.05, -0.51}};
  GraphLiteral g;
  g.allow_loops = true;
  for (int i = 0; i < 4; ++i) g.vertices.push_back(vertex(ids[i], x[i]));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) g.edges.push_back({ids[i], ids[j], w[i][j]});
  }
  return g;
}

State build_initial_state() { return literal_state(initial_graph()); }

void mirror_edges(GraphLiteral& g) {
  std::set<std::pair<Label, Label>> listed;
  for (const auto& e : g.edges) listed.emplace(e.from, e.to);
  const std::size_t n = g.edges.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto e = g.edges[i];
    if (e.from != e.to && listed.emplace(e.to, e.from).second) {
      g.edges.push_back({e.to, e.from, e.weight});
    }
  }
}

std::vector<ScheduleEntry> bacteriotherapy_entries(const ScheduleOptions& opts) {
  auto addition = [&](std::vector<GraphLiteral::Vertex> existing,
                      std::vector<GraphLiteral::Vertex> added,
                      std::vector<GraphLiteral::Edge> edges) {
    GraphLiteral g;
    g.allow_loops = true;
    g.vertices = std::move(existing);
    for (const auto& v : added) {
      g.vertices.push_back(v);
      if (!std::isnan(opts.added_self_loop)) edges.push_back({v.id, v.id, opts.added_self_loop});
    }
    g.edges = std::move(edges);
    if (opts.symmetric) mirror_edges(g);
    return g;
  };

  GraphLiteral first = addition({vertex(1, 0), vertex(2, 0), vertex(4, 0), vertex(5, 0)},
                                {vertex(9, 0.85)},
                                {{9, 1, 0.35}, {9, 2, -0.03}, {9, 4, 0.67}, {9, 5, 0.16}});

  GraphLiteral second = addition(
      {vertex(1, 0), vertex(2, 0), vertex(4, 0), vertex(5, 0), vertex(9, 0)},
      {vertex(3, 0.6), vertex(8, 0.8)},
      {{3, 8, -0.77},
       {3, 1, 0.14}, {3, 2, -0.04}, {3, 4, -0.13}, {3, 5, -0.17}, {3, 9, 0.30},
       {8, 1, -0.4}, {8, 2, -0.41}, {8, 4, -1.01}, {8, 5, 0.55}, {8, 9, 0.44}});

  GraphLiteral retain;
  retain.allow_loops = true;
  const Label kept[3] = {1, 2, 4};
  for (Label p : kept) {
    retain.vertices.push_back(vertex(p, 0));
    for (Label q : kept) retain.edges.push_back({p, q, 0.0});
  }

  return {{190.0, InputMode::Add, std::move(first)},
          {330.0, InputMode::Add, std::move(second)},
          {560.0, InputMode::Retain, std::move(retain)}};
}

std::vector<ScheduledInput> bacteriotherapy_schedule(const ScheduleOptions& opts) {
  std::vector<ScheduledInput> out;
  for (const auto& e : bacteriotherapy_entries(opts)) {
    out.push_back({e.t, literal_state(e.input), e.mode});
  }
  return out;
}

State literal_state(const GraphLiteral& g) { return phi(Graph::from_literal(g)); }

std::vector<std::string> scenario_violations(const Scenario& s) {
  std::vector<std::string> out;
  const LabelSet universe = s.universe.to_set();
  auto check_graph = [&](const GraphLiteral& g, const std::string& where) {
    for (const auto& v : validate(g)) out.push_back(where + ": " + v.message);
    for (const auto& v : g.vertices) {
      if (!universe.contains(v.id)) {
        out.push_back(where + ": label " + std::to_string(v.id) + " is outside the universe");
      }
    }
  };

  if (s.universe.empty()) out.push_back("universe is empty");
  check_graph(s.initial, "initial_state");
  if (s.initial.vertices.empty()) out.push_back("initial_state has no vertices");
  for (Label l : s.universe) {
    if (!s.params.species.contains(l)) {
      out.push_back("params: missing species " + std::to_string(l));
    }
  }
  if (!(s.sim.dt > 0.0) || !std::isfinite(s.sim.dt)) out.push_back("sim.dt must be positive");
  if (!(s.sim.t_max > 0.0) || !std::isfinite(s.sim.t_max)) {
    out.push_back("sim.t_max must be positive");
  }
  if (s.sim.k_max < 0) out.push_back("sim.k_max must be non-negative");
  try {
    s.jumps.check();
  } catch (const JumpError& e) {
    out.push_back(std::string("jump_config: ") + e.what());
  }
  for (std::size_t i = 0; i < s.schedule.size(); ++i) {
    const auto& e = s.schedule[i];
    const std::string where = "schedule[" + std::to_string(i) + "]";
    if (!(e.t >= 0.0 && e.t <= s.sim.t_max)) {
      out.push_back(where + ": time " + std::to_string(e.t) + " is outside [0, t_max]");
    }
    if (i > 0 && !(e.t > s.schedule[i - 1].t)) {
      out.push_back(where + ": times must be strictly increasing");
    }
    check_graph(e.input, where);
  }
  return out;
}

RunResult run_scenario(const Scenario& s) {
  if (auto violations = scenario_violations(s); !violations.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ConfigError(msg);
  }
  Disturbance dist;
  dist.u = s.sim.antibiotic
               ? PiecewiseConstantSignal({s.params.t_star}, {{1.0}, {0.0}})
               : PiecewiseConstantSignal::constant({0.0});
  for (const auto& e : s.schedule) dist.schedule.push_back({e.t, literal_state(e.input), e.mode});

  SolverOptions opts;
  opts.t_max = s.sim.t_max;
  opts.dt = s.sim.dt;
  opts.k_max = s.sim.k_max;

  RunResult result;
  result.arc = solve(make_glv_flow(s.params, s.sim.freeze_weights), literal_state(s.initial), dist,
                     s.jumps, opts);
  for (const auto& seg : result.arc.segments) {
    result.summary.dimension_trace.push_back({seg.t_begin(), seg.k, seg.basis.size()});
  }
  result.summary.sample_count = result.arc.sample_count();
  result.summary.jump_count = result.arc.jumps.size();
  result.summary.truncated = result.arc.truncated;
  result.summary.t_end = result.arc.segments.back().t_end();
  return result;
}

}  // namespace gss
