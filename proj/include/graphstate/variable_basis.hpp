#pragma once

// Variable-basis vectors and tensors. Every element carries its own basis,
// so two elements of equal dimension may live on different label sets.
// States are dense over the full square of their vertex basis.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphstate/graph.hpp"

namespace gss {

class BasisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite label set in ascending order.
class BasisSet {
 public:
  BasisSet() = default;
  BasisSet(std::initializer_list<Label> labels);
  /// Sorts; throws BasisError on duplicates.
  explicit BasisSet(std::vector<Label> labels);
  explicit BasisSet(const LabelSet& labels);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  bool contains(Label label) const;
  std::optional<std::size_t> index_of(Label label) const;
  Label operator[](std::size_t i) const { return labels_[i]; }

  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }
  const std::vector<Label>& labels() const { return labels_; }
  LabelSet to_set() const { return {labels_.begin(), labels_.end()}; }

  BasisSet unite(const BasisSet& other) const;
  BasisSet intersect(const BasisSet& other) const;
  bool is_subset_of(const BasisSet& other) const;

  friend bool operator==(const BasisSet&, const BasisSet&) = default;

 private:
  std::vector<Label> labels_;
};

/// Finite set of label pairs in lexicographic order.
class PairBasis {
 public:
  PairBasis() = default;
  /// Sorts; throws BasisError on duplicates.
  explicit PairBasis(std::vector<EdgeKey> pairs);

  /// B ⊗ B. Pair (B[i], B[j]) sits at index i * |B| + j.
  static PairBasis square(const BasisSet& basis);

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  std::optional<std::size_t> index_of(EdgeKey pair) const;
  const EdgeKey& operator[](std::size_t i) const { return pairs_[i]; }

  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  PairBasis unite(const PairBasis& other) const;
  PairBasis intersect(const PairBasis& other) const;
  bool is_square_of(const BasisSet& basis) const;

  friend bool operator==(const PairBasis&, const PairBasis&) = default;

 private:
  std::vector<EdgeKey> pairs_;
};

struct VBVector {
  BasisSet basis;
  std::vector<double> coeffs;

  VBVector() = default;
  /// Throws BasisError when sizes differ.
  VBVector(BasisSet b, std::vector<double> c);

  /// Coefficient at `label`, or 0 for labels outside the basis.
  double at(Label label) const;

  friend bool operator==(const VBVector&, const VBVector&) = default;
};

struct VBTensor {
  PairBasis basis;
  std::vector<double> coeffs;

  VBTensor() = default;
  VBTensor(PairBasis b, std::vector<double> c);

  double at(EdgeKey pair) const;

  friend bool operator==(const VBTensor&, const VBTensor&) = default;
};

struct BoolTensor {
  PairBasis basis;
  std::vector<std::uint8_t> coeffs;

  BoolTensor() = default;
  /// Throws BasisError on size mismatch or a coefficient outside {0, 1}.
  BoolTensor(PairBasis b, std::vector<std::uint8_t> c);

  bool at(EdgeKey pair) const;

  friend bool operator==(const BoolTensor&, const BoolTensor&) = default;
};

enum class Combine { Union, Inter };

/// Coefficients summed on the united or common basis; zero-fill on the union.
VBVector combine(Combine op, const VBVector& x, const VBVector& y);
VBTensor combine(Combine op, const VBTensor& w, const VBTensor& v);
/// OR on the united pair basis, AND on the common one.
BoolTensor combine(Combine op, const BoolTensor& a, const BoolTensor& e);

/// Element (x_B, w_D, a_D) of the graph image: D = B ⊗ B and w vanishes
/// wherever a does. Plain aggregate so broken states can be expressed and
/// reported by state_violations(); every operation returns canonical states.
struct State {
  VBVector x;
  VBTensor w;
  BoolTensor a;

  const BasisSet& basis() const { return x.basis; }
  std::size_t dim() const { return x.basis.size(); }

  // Dense accessors; valid on canonical states only.
  double attr(std::size_t i) const { return x.coeffs[i]; }
  double weight(std::size_t i, std::size_t j) const { return w.coeffs[i * dim() + j]; }
  bool adjacent(std::size_t i, std::size_t j) const { return a.coeffs[i * dim() + j] != 0; }

  friend bool operator==(const State&, const State&) = default;
};

/// Builds a state on `basis` from row-major |B|×|B| weight and adjacency
/// arrays, then masks the weights by the adjacency.
State make_state(BasisSet basis, std::vector<double> x, std::vector<double> w,
                 std::vector<std::uint8_t> a);

State empty_state();

/// Each breach of the graph-image conditions, as readable text.
std::vector<std::string> state_violations(const State& s, bool allow_loops = true);
bool is_canonical(const State& s);

/// Zeroes w wherever a is 0. Requires D = B ⊗ B.
void mask_weights(State& s);

State combine(Combine op, const State& x, const State& y);
State scale(double lambda, const State& s);

struct StateFlags {
  bool total = false;
  bool complete = false;  // all off-diagonal adjacency bits set
  bool null = false;
  bool has_loops = false;
};

StateFlags classify_state(const State& s, const BasisSet& universe);

/// Null state on `basis` with every pair adjacent, self-pairs only if
/// `loops`. On the universe this is the identity of the Inter combination.
State null_complete(const BasisSet& basis, bool loops);

/// Unit element built from `s`: attributes 1, weights 1 on its edges,
/// adjacency unchanged.
State unit_of(const State& s);

/// Unit element on `basis`: attributes 1, every pair adjacent with weight 1.
State unit_on(const BasisSet& basis);

/// Largest coefficient difference of two states on identical bases, or
/// +inf when bases or adjacency differ.
double max_abs_diff(const State& lhs, const State& rhs);

}  // namespace gss
