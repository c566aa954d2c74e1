#pragma once

// Bijection between graphs and canonical variable-basis states.

#include <optional>
#include <stdexcept>

#include "graphstate/graph.hpp"
#include "graphstate/variable_basis.hpp"

namespace gss {

class EmbeddingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Vertex labels become the basis; a marks edges, w carries their weights
/// and is zero on non-edges.
State phi(const Graph& g);

/// Inverse of phi. Zero-weight edges survive because existence lives in a.
/// Loops are permitted when `allow_loops` says so, or by default when the
/// state has any. Throws EmbeddingError if `s` is not canonical.
Graph phi_inv(const State& s, std::optional<bool> allow_loops = std::nullopt);

}  // namespace gss
