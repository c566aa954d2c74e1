#pragma once

// Labeled, weighted graphs with vertex attributes, and the additive
// union / intersection / scalar laws that act on them.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gss {

using Label = std::uint32_t;
using LabelSet = std::set<Label>;

/// Ordered pair of labels. Edges are directed: (p, q) and (q, p) are distinct.
struct EdgeKey {
  Label from = 0;
  Label to = 0;

  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Graph as written in a scenario file. Nothing here is checked; use
/// validate() to list invariant breaches before building a Graph.
struct GraphLiteral {
  struct Vertex {
    Label id = 0;
    double attr = 0.0;
  };
  struct Edge {
    Label from = 0;
    Label to = 0;
    double weight = 0.0;
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  bool allow_loops = false;
};

struct Violation {
  enum class Kind { DanglingEndpoint, DuplicateLabel, DuplicateEdge, ForbiddenLoop };

  Kind kind;
  std::string message;
};

/// Every invariant breach of `g`, in input order. Empty means valid.
std::vector<Violation> validate(const GraphLiteral& g);

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Graph {
 public:
  using VertexMap = std::map<Label, double>;
  using EdgeMap = std::map<EdgeKey, double>;

  Graph() = default;
  explicit Graph(bool allow_loops) : allow_loops_(allow_loops) {}

  /// Throws GraphError naming every violation.
  static Graph from_literal(const GraphLiteral& literal);
  /// Throws GraphError on a dangling endpoint or forbidden loop.
  static Graph from_maps(VertexMap vertices, EdgeMap edges, bool allow_loops);

  GraphLiteral to_literal() const;

  void add_vertex(Label id, double attr);
  void add_edge(Label from, Label to, double weight);

  bool has_vertex(Label id) const { return vertices_.contains(id); }
  bool has_edge(Label from, Label to) const { return edges_.contains({from, to}); }
  std::optional<double> attr(Label id) const;
  std::optional<double> weight(Label from, Label to) const;

  const VertexMap& vertices() const { return vertices_; }
  const EdgeMap& edges() const { return edges_; }
  LabelSet labels() const;

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return vertices_.empty() && edges_.empty(); }

  bool allow_loops() const { return allow_loops_; }

  // Content equality: the loop permission is a constraint, not content.
  friend bool operator==(const Graph& lhs, const Graph& rhs) {
    return lhs.vertices_ == rhs.vertices_ && lhs.edges_ == rhs.edges_;
  }

 private:
  VertexMap vertices_;
  EdgeMap edges_;
  bool allow_loops_ = false;
};

/// Same topology and every attribute/weight within `tol`.
bool approx_equal(const Graph& lhs, const Graph& rhs, double tol);

struct GraphKind {
  bool is_empty = false;
  bool is_zero = false;
  bool is_total = false;
  bool is_complete = false;  // every ordered pair p != q is an edge
  bool has_loops = false;
};

GraphKind classify(const Graph& g, const LabelSet& universe);

/// Additive union: topology united, values summed on shared labels.
Graph union_add(const Graph& x, const Graph& y);

/// Additive intersection: topology intersected, values summed.
Graph inter_add(const Graph& x, const Graph& y);

/// Scales every attribute and weight; topology untouched.
Graph scalar_mul(double alpha, const Graph& g);

/// X minus the labels and pairs it shares with Y. Edges whose endpoints were
/// removed are dropped so the result is again a graph.
Graph graph_diff(const Graph& x, const Graph& y);

/// Identity of inter_add over `universe`: every label, every ordered pair
/// (plus self-pairs when loops are allowed), all values zero.
Graph identity_inter(const LabelSet& universe, bool allow_loops);

/// Raw vertex/edge sets that need not form a graph on their own.
struct GraphParts {
  Graph::VertexMap vertices;
  Graph::EdgeMap edges;
};

/// Set-level difference X \ Y keeping X's values; no endpoint re-validation.
GraphParts set_difference(const Graph& x, const Graph& y);
GraphParts parts_of(const Graph& g);

/// Union of pairwise label-disjoint parts. Throws GraphError if two parts
/// share a label or pair, or if the result is not a graph.
Graph disjoint_union(const std::vector<GraphParts>& parts, bool allow_loops);

}  // namespace gss
