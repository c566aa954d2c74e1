#include "graphstate/embedding.hpp"

#include <algorithm>

namespace gss {

State phi(const Graph& g) {
  BasisSet basis(g.labels());
  const std::size_t n = basis.size();
  std::vector<double> x;
  x.reserve(n);
  for (const auto& [id, attr] : g.vertices()) x.push_back(attr);
  std::vector<double> w(n * n, 0.0);
  std::vector<std::uint8_t> a(n * n, 0);
  for (const auto& [key, weight] : g.edges()) {
    const std::size_t idx = *basis.index_of(key.from) * n + *basis.index_of(key.to);
    w[idx] = weight;
    a[idx] = 1;
  }
  return make_state(std::move(basis), std::move(x), std::move(w), std::move(a));
}

Graph phi_inv(const State& s, std::optional<bool> allow_loops) {
  bool has_loops = false;
  for (std::size_t i = 0; i < std::min(s.a.basis.size(), s.a.coeffs.size()); ++i) {
    has_loops = has_loops || (s.a.coeffs[i] != 0 && s.a.basis[i].from == s.a.basis[i].to);
  }
  const bool loops = allow_loops.value_or(has_loops);
  if (auto violations = state_violations(s, loops); !violations.empty()) {
    std::string msg = "state is outside the graph image:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw EmbeddingError(msg);
  }
  Graph::VertexMap vertices;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    vertices.emplace_hint(vertices.end(), s.basis()[i], s.attr(i));
  }
  Graph::EdgeMap edges;
  for (std::size_t i = 0; i < s.a.coeffs.size(); ++i) {
    if (s.a.coeffs[i] != 0) edges.emplace_hint(edges.end(), s.a.basis[i], s.w.coeffs[i]);
  }
  return Graph::from_maps(std::move(vertices), std::move(edges), loops);
}

}  // namespace gss
