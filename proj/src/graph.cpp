#include "graphstate/graph.hpp"

#include <cmath>
#include <sstream>

namespace gss {
namespace {

std::string pair_text(Label p, Label q) {
  return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

void throw_violations(const std::vector<Violation>& violations) {
  std::ostringstream msg;
  msg << "invalid graph:";
  for (const auto& v : violations) msg << ' ' << v.message << ';';
  throw GraphError(msg.str());
}

}  // namespace

std::vector<Violation> validate(const GraphLiteral& g) {
  std::vector<Violation> out;
  LabelSet labels;
  for (const auto& v : g.vertices) {
    if (!labels.insert(v.id).second) {
      out.push_back({Violation::Kind::DuplicateLabel,
                     "duplicate label " + std::to_string(v.id)});
    }
  }
  std::set<EdgeKey> pairs;
  for (const auto& e : g.edges) {
    for (Label end : {e.from, e.to}) {
      if (!labels.contains(end)) {
        out.push_back({Violation::Kind::DanglingEndpoint,
                       "dangling endpoint " + std::to_string(end) + " in edge " +
                           pair_text(e.from, e.to)});
      }
      if (e.from == e.to) break;
    }
    if (!pairs.insert({e.from, e.to}).second) {
      out.push_back({Violation::Kind::DuplicateEdge,
                     "duplicate edge " + pair_text(e.from, e.to)});
    }
    if (e.from == e.to && !g.allow_loops) {
      out.push_back({Violation::Kind::ForbiddenLoop,
                     "loop " + pair_text(e.from, e.to) + " in a loopless graph"});
    }
  }
  return out;
}

Graph Graph::from_literal(const GraphLiteral& literal) {
  if (auto violations = validate(literal); !violations.empty()) {
    throw_violations(violations);
  }
  Graph g(literal.allow_loops);
  for (const auto& v : literal.vertices) g.vertices_.emplace(v.id, v.attr);
  for (const auto& e : literal.edges) g.edges_.emplace(EdgeKey{e.from, e.to}, e.weight);
  return g;
}

Graph Graph::from_maps(VertexMap vertices, EdgeMap edges, bool allow_loops) {
  std::vector<Violation> violations;
  for (const auto& [key, w] : edges) {
    if (!vertices.contains(key.from) || !vertices.contains(key.to)) {
      Label missing = vertices.contains(key.from) ? key.to : key.from;
      violations.push_back({Violation::Kind::DanglingEndpoint,
                            "dangling endpoint " + std::to_string(missing) +
                                " in edge " + pair_text(key.from, key.to)});
    }
    if (key.from == key.to && !allow_loops) {
      violations.push_back({Violation::Kind::ForbiddenLoop,
                            "loop " + pair_text(key.from, key.to) + " in a loopless graph"});
    }
  }
  if (!violations.empty()) throw_violations(violations);
  Graph g(allow_loops);
  g.vertices_ = std::move(vertices);
  g.edges_ = std::move(edges);
  return g;
}

GraphLiteral Graph::to_literal() const {
  GraphLiteral out;
  out.allow_loops = allow_loops_;
  for (const auto& [id, x] : vertices_) out.vertices.push_back({id, x});
  for (const auto& [key, w] : edges_) out.edges.push_back({key.from, key.to, w});
  return out;
}

void Graph::add_vertex(Label id, double attr) {
  if (!vertices_.emplace(id, attr).second) {
    throw GraphError("duplicate label " + std::to_string(id));
  }
}

void Graph::add_edge(Label from, Label to, double weight) {
  if (!vertices_.contains(from)) throw GraphError("dangling endpoint " + std::to_string(from));
  if (!vertices_.contains(to)) throw GraphError("dangling endpoint " + std::to_string(to));
  if (from == to && !allow_loops_) {
    throw GraphError("loop " + pair_text(from, to) + " in a loopless graph");
  }
  if (!edges_.emplace(EdgeKey{from, to}, weight).second) {
    throw GraphError("duplicate edge " + pair_text(from, to));
  }
}

std::optional<double> Graph::attr(Label id) const {
  auto it = vertices_.find(id);
  if (it == vertices_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> Graph::weight(Label from, Label to) const {
  auto it = edges_.find({from, to});
  if (it == edges_.end()) return std::nullopt;
  return it->second;
}

LabelSet Graph::labels() const {
  LabelSet out;
  for (const auto& [id, x] : vertices_) out.insert(out.end(), id);
  return out;
}

bool approx_equal(const Graph& lhs, const Graph& rhs, double tol) {
  if (lhs.vertex_count() != rhs.vertex_count() || lhs.edge_count() != rhs.edge_count()) {
    return false;
  }
  for (auto a = lhs.vertices().begin(), b = rhs.vertices().begin(); a != lhs.vertices().end();
       ++a, ++b) {
    if (a->first != b->first || std::abs(a->second - b->second) > tol) return false;
  }
  for (auto a = lhs.edges().begin(), b = rhs.edges().begin(); a != lhs.edges().end(); ++a, ++b) {
    if (a->first != b->first || std::abs(a->second - b->second) > tol) return false;
  }
  return true;
}

GraphKind classify(const Graph& g, const LabelSet& universe) {
  GraphKind kind;
  kind.is_empty = g.empty();
  kind.is_zero = true;
  for (const auto& [id, x] : g.vertices()) kind.is_zero = kind.is_zero && x == 0.0;
  for (const auto& [key, w] : g.edges()) {
    kind.is_zero = kind.is_zero && w == 0.0;
    kind.has_loops = kind.has_loops || key.from == key.to;
  }
  kind.is_total = g.labels() == universe;
  kind.is_complete = true;
  for (const auto& [p, xp] : g.vertices()) {
    for (const auto& [q, xq] : g.vertices()) {
      if (p != q && !g.has_edge(p, q)) kind.is_complete = false;
    }
  }
  return kind;
}

namespace {

// Sorted-merge over two maps: `both` on shared keys, `only` on one-sided ones.
template <typename Map, typename Both, typename Only>
void merge_maps(const Map& x, const Map& y, Both both, Only only) {
  auto a = x.begin();
  auto b = y.begin();
  while (a != x.end() || b != y.end()) {
    if (b == y.end() || (a != x.end() && a->first < b->first)) {
      only(a->first, a->second);
      ++a;
    } else if (a == x.end() || b->first < a->first) {
      only(b->first, b->second);
      ++b;
    } else {
      both(a->first, a->second, b->second);
      ++a;
      ++b;
    }
  }
}

}  // namespace

Graph union_add(const Graph& x, const Graph& y) {
  Graph::VertexMap vertices;
  merge_maps(
      x.vertices(), y.vertices(),
      [&](Label id, double xv, double yv) { vertices.emplace_hint(vertices.end(), id, xv + yv); },
      [&](Label id, double v) { vertices.emplace_hint(vertices.end(), id, v); });
  Graph::EdgeMap edges;
  merge_maps(
      x.edges(), y.edges(),
      [&](EdgeKey k, double xw, double yw) { edges.emplace_hint(edges.end(), k, xw + yw); },
      [&](EdgeKey k, double w) { edges.emplace_hint(edges.end(), k, w); });
  return Graph::from_maps(std::move(vertices), std::move(edges),
                          x.allow_loops() || y.allow_loops());
}

Graph inter_add(const Graph& x, const Graph& y) {
  Graph::VertexMap vertices;
  merge_maps(
      x.vertices(), y.vertices(),
      [&](Label id, double xv, double yv) { vertices.emplace_hint(vertices.end(), id, xv + yv); },
      [](Label, double) {});
  Graph::EdgeMap edges;
  merge_maps(
      x.edges(), y.edges(),
      [&](EdgeKey k, double xw, double yw) { edges.emplace_hint(edges.end(), k, xw + yw); },
      [](EdgeKey, double) {});
  return Graph::from_maps(std::move(vertices), std::move(edges),
                          x.allow_loops() || y.allow_loops());
}

Graph scalar_mul(double alpha, const Graph& g) {
  Graph::VertexMap vertices = g.vertices();
  for (auto& [id, x] : vertices) x *= alpha;
  Graph::EdgeMap edges = g.edges();
  for (auto& [key, w] : edges) w *= alpha;
  return Graph::from_maps(std::move(vertices), std::move(edges), g.allow_loops());
}

GraphParts set_difference(const Graph& x, const Graph& y) {
  GraphParts out;
  for (const auto& [id, v] : x.vertices()) {
    if (!y.has_vertex(id)) out.vertices.emplace_hint(out.vertices.end(), id, v);
  }
  for (const auto& [key, w] : x.edges()) {
    if (!y.edges().contains(key)) out.edges.emplace_hint(out.edges.end(), key, w);
  }
  return out;
}

GraphParts parts_of(const Graph& g) { return {g.vertices(), g.edges()}; }

Graph graph_diff(const Graph& x, const Graph& y) {
  GraphParts parts = set_difference(x, y);
  std::erase_if(parts.edges, [&](const auto& entry) {
    return !parts.vertices.contains(entry.first.from) || !parts.vertices.contains(entry.first.to);
  });
  return Graph::from_maps(std::move(parts.vertices), std::move(parts.edges), x.allow_loops());
}

Graph identity_inter(const LabelSet& universe, bool allow_loops) {
  Graph::VertexMap vertices;
  Graph::EdgeMap edges;
  for (Label p : universe) {
    vertices.emplace_hint(vertices.end(), p, 0.0);
    for (Label q : universe) {
      if (p != q || allow_loops) edges.emplace_hint(edges.end(), EdgeKey{p, q}, 0.0);
    }
  }
  return Graph::from_maps(std::move(vertices), std::move(edges), allow_loops);
}

Graph disjoint_union(const std::vector<GraphParts>& parts, bool allow_loops) {
  Graph::VertexMap vertices;
  Graph::EdgeMap edges;
  for (const auto& part : parts) {
    for (const auto& [id, v] : part.vertices) {
      if (!vertices.emplace(id, v).second) {
        throw GraphError("parts share label " + std::to_string(id));
      }
    }
    for (const auto& [key, w] : part.edges) {
      if (!edges.emplace(key, w).second) {
        throw GraphError("parts share edge " + pair_text(key.from, key.to));
      }
    }
  }
  return Graph::from_maps(std::move(vertices), std::move(edges), allow_loops);
}

}  // namespace gss
