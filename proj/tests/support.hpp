#pragma once

// Random generators and a naive list-based oracle shared by the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "graphstate/graph.hpp"
#include "graphstate/variable_basis.hpp"

namespace gss::testing {

using Rng = std::mt19937_64;

inline LabelSet universe_of(Label n) {
  LabelSet u;
  for (Label i = 1; i <= n; ++i) u.insert(i);
  return u;
}

inline double random_value(Rng& rng) { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }

/// Up to `max_vertices` labels drawn from 1..universe, each pair an edge with
/// probability `density`.
inline Graph random_graph(Rng& rng, Label universe = 12, std::size_t max_vertices = 10,
                          bool allow_loops = true, double density = 0.35) {
  std::vector<Label> labels;
  for (Label i = 1; i <= universe; ++i) labels.push_back(i);
  std::shuffle(labels.begin(), labels.end(), rng);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_vertices)(rng);
  labels.resize(std::min(n, labels.size()));
  Graph g(allow_loops);
  for (Label l : labels) g.add_vertex(l, random_value(rng));
  std::bernoulli_distribution edge(density);
  for (Label p : labels) {
    for (Label q : labels) {
      if ((p != q || allow_loops) && edge(rng)) g.add_edge(p, q, random_value(rng));
    }
  }
  return g;
}

/// Random graph sharing part of its labels and pairs with `base`, so that
/// intersections are rarely empty.
inline Graph overlapping_graph(Rng& rng, const Graph& base, Label universe = 12,
                               std::size_t max_vertices = 10) {
  Graph g = random_graph(rng, universe, max_vertices, base.allow_loops());
  std::bernoulli_distribution keep(0.5);
  Graph out(base.allow_loops());
  for (const auto& [id, x] : g.vertices()) out.add_vertex(id, x);
  for (const auto& [id, x] : base.vertices()) {
    if (!out.has_vertex(id) && keep(rng)) out.add_vertex(id, random_value(rng));
  }
  for (const auto& [key, w] : g.edges()) out.add_edge(key.from, key.to, w);
  for (const auto& [key, w] : base.edges()) {
    if (out.has_vertex(key.from) && out.has_vertex(key.to) && !out.has_edge(key.from, key.to) &&
        keep(rng)) {
      out.add_edge(key.from, key.to, random_value(rng));
    }
  }
  return out;
}

/// Plain lists with linear lookups; deliberately unrelated to the library's
/// sorted-merge implementation.
struct NaiveGraph {
  std::vector<std::pair<Label, double>> vertices;
  std::vector<std::pair<std::pair<Label, Label>, double>> edges;

  static NaiveGraph of(const Graph& g) {
    NaiveGraph n;
    for (const auto& [id, x] : g.vertices()) n.vertices.emplace_back(id, x);
    for (const auto& [k, w] : g.edges()) n.edges.push_back({{k.from, k.to}, w});
    return n;
  }

  template <typename List, typename Key>
  static const double* find(const List& list, const Key& key) {
    for (const auto& [k, v] : list) {
      if (k == key) return &v;
    }
    return nullptr;
  }

  template <typename List>
  static List merge(const List& a, const List& b, bool keep_unshared) {
    List out;
    for (const auto& [k, v] : a) {
      if (const double* other = find(b, k)) {
        out.emplace_back(k, v + *other);
      } else if (keep_unshared) {
        out.emplace_back(k, v);
      }
    }
    if (keep_unshared) {
      for (const auto& [k, v] : b) {
        if (!find(a, k)) out.emplace_back(k, v);
      }
    }
    return out;
  }

  static NaiveGraph unite(const NaiveGraph& a, const NaiveGraph& b) {
    return {merge(a.vertices, b.vertices, true), merge(a.edges, b.edges, true)};
  }
  static NaiveGraph intersect(const NaiveGraph& a, const NaiveGraph& b) {
    return {merge(a.vertices, b.vertices, false), merge(a.edges, b.edges, false)};
  }

  /// Same label sets and pairs, values equal within `tol`.
  bool matches(const Graph& g, double tol) const {
    if (vertices.size() != g.vertex_count() || edges.size() != g.edge_count()) return false;
    for (const auto& [id, x] : vertices) {
      const auto a = g.attr(id);
      if (!a || std::abs(*a - x) > tol) return false;
    }
    for (const auto& [k, w] : edges) {
      const auto v = g.weight(k.first, k.second);
      if (!v || std::abs(*v - w) > tol) return false;
    }
    return true;
  }
};

}  // namespace gss::testing
