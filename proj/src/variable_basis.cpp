#include "graphstate/variable_basis.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>

namespace gss {
namespace {

template <typename T>
void sort_unique_or_throw(std::vector<T>& items, const char* what) {
  std::sort(items.begin(), items.end());
  if (std::adjacent_find(items.begin(), items.end()) != items.end()) {
    throw BasisError(std::string("duplicate entry in ") + what);
  }
}

std::string pair_text(EdgeKey k) {
  return "(" + std::to_string(k.from) + "," + std::to_string(k.to) + ")";
}

}  // namespace

BasisSet::BasisSet(std::initializer_list<Label> labels) : BasisSet(std::vector<Label>(labels)) {}

BasisSet::BasisSet(std::vector<Label> labels) : labels_(std::move(labels)) {
  sort_unique_or_throw(labels_, "basis set");
}

BasisSet::BasisSet(const LabelSet& labels) : labels_(labels.begin(), labels.end()) {}

bool BasisSet::contains(Label label) const {
  return std::binary_search(labels_.begin(), labels_.end(), label);
}

std::optional<std::size_t> BasisSet::index_of(Label label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

BasisSet BasisSet::unite(const BasisSet& other) const {
  BasisSet out;
  std::set_union(labels_.begin(), labels_.end(), other.labels_.begin(), other.labels_.end(),
                 std::back_inserter(out.labels_));
  return out;
}

BasisSet BasisSet::intersect(const BasisSet& other) const {
  BasisSet out;
  std::set_intersection(labels_.begin(), labels_.end(), other.labels_.begin(),
                        other.labels_.end(), std::back_inserter(out.labels_));
  return out;
}

bool BasisSet::is_subset_of(const BasisSet& other) const {
  return std::includes(other.labels_.begin(), other.labels_.end(), labels_.begin(),
                       labels_.end());
}

PairBasis::PairBasis(std::vector<EdgeKey> pairs) : pairs_(std::move(pairs)) {
  sort_unique_or_throw(pairs_, "pair basis");
}

PairBasis PairBasis::square(const BasisSet& basis) {
  PairBasis out;
  out.pairs_.reserve(basis.size() * basis.size());
  for (Label p : basis) {
    for (Label q : basis) out.pairs_.push_back({p, q});
  }
  return out;
}

std::optional<std::size_t> PairBasis::index_of(EdgeKey pair) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), pair);
  if (it == pairs_.end() || *it != pair) return std::nullopt;
  return static_cast<std::size_t>(it - pairs_.begin());
}

PairBasis PairBasis::unite(const PairBasis& other) const {
  PairBasis out;
  std::set_union(pairs_.begin(), pairs_.end(), other.pairs_.begin(), other.pairs_.end(),
                 std::back_inserter(out.pairs_));
  return out;
}

PairBasis PairBasis::intersect(const PairBasis& other) const {
  PairBasis out;
  std::set_intersection(pairs_.begin(), pairs_.end(), other.pairs_.begin(), other.pairs_.end(),
                        std::back_inserter(out.pairs_));
  return out;
}

bool PairBasis::is_square_of(const BasisSet& basis) const {
  const std::size_t n = basis.size();
  if (pairs_.size() != n * n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (pairs_[i * n + j] != EdgeKey{basis[i], basis[j]}) return false;
    }
  }
  return true;
}

VBVector::VBVector(BasisSet b, std::vector<double> c) : basis(std::move(b)), coeffs(std::move(c)) {
  if (basis.size() != coeffs.size()) throw BasisError("vector size does not match its basis");
}

double VBVector::at(Label label) const {
  auto i = basis.index_of(label);
  return i ? coeffs[*i] : 0.0;
}

VBTensor::VBTensor(PairBasis b, std::vector<double> c) : basis(std::move(b)), coeffs(std::move(c)) {
  if (basis.size() != coeffs.size()) throw BasisError("tensor size does not match its basis");
}

double VBTensor::at(EdgeKey pair) const {
  auto i = basis.index_of(pair);
  return i ? coeffs[*i] : 0.0;
}

BoolTensor::BoolTensor(PairBasis b, std::vector<std::uint8_t> c)
    : basis(std::move(b)), coeffs(std::move(c)) {
  if (basis.size() != coeffs.size()) throw BasisError("tensor size does not match its basis");
  for (auto bit : coeffs) {
    if (bit > 1) throw BasisError("boolean coefficient outside {0,1}");
  }
}

bool BoolTensor::at(EdgeKey pair) const {
  auto i = basis.index_of(pair);
  return i && coeffs[*i] != 0;
}

namespace {

// Walks the union or intersection of two sorted bases, calling
// emit(key, value_in_lhs_or_fill, value_in_rhs_or_fill).
template <typename Basis, typename Coeffs, typename Fill, typename Emit>
void walk(Combine op, const Basis& lb, const Coeffs& lc, const Basis& rb, const Coeffs& rc,
          Fill fill, Emit emit) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < lb.size() || j < rb.size()) {
    if (j == rb.size() || (i < lb.size() && lb[i] < rb[j])) {
      if (op == Combine::Union) emit(lb[i], lc[i], fill);
      ++i;
    } else if (i == lb.size() || rb[j] < lb[i]) {
      if (op == Combine::Union) emit(rb[j], fill, rc[j]);
      ++j;
    } else {
      emit(lb[i], lc[i], rc[j]);
      ++i;
      ++j;
    }
  }
}

}  // namespace

VBVector combine(Combine op, const VBVector& x, const VBVector& y) {
  std::vector<Label> labels;
  std::vector<double> coeffs;
  walk(op, x.basis, x.coeffs, y.basis, y.coeffs, 0.0, [&](Label p, double xp, double yp) {
    labels.push_back(p);
    coeffs.push_back(xp + yp);
  });
  return {BasisSet(std::move(labels)), std::move(coeffs)};
}

VBTensor combine(Combine op, const VBTensor& w, const VBTensor& v) {
  std::vector<EdgeKey> pairs;
  std::vector<double> coeffs;
  walk(op, w.basis, w.coeffs, v.basis, v.coeffs, 0.0, [&](EdgeKey k, double wk, double vk) {
    pairs.push_back(k);
    coeffs.push_back(wk + vk);
  });
  return {PairBasis(std::move(pairs)), std::move(coeffs)};
}

BoolTensor combine(Combine op, const BoolTensor& a, const BoolTensor& e) {
  std::vector<EdgeKey> pairs;
  std::vector<std::uint8_t> coeffs;
  walk(op, a.basis, a.coeffs, e.basis, e.coeffs, std::uint8_t{0},
       [&](EdgeKey k, std::uint8_t ak, std::uint8_t ek) {
         pairs.push_back(k);
         coeffs.push_back(op == Combine::Union ? (ak | ek) : (ak & ek));
       });
  return {PairBasis(std::move(pairs)), std::move(coeffs)};
}

State make_state(BasisSet basis, std::vector<double> x, std::vector<double> w,
                 std::vector<std::uint8_t> a) {
  PairBasis square = PairBasis::square(basis);
  State s{VBVector(std::move(basis), std::move(x)), VBTensor(square, std::move(w)),
          BoolTensor(square, std::move(a))};
  mask_weights(s);
  return s;
}

State empty_state() { return make_state({}, {}, {}, {}); }

std::vector<std::string> state_violations(const State& s, bool allow_loops) {
  std::vector<std::string> out;
  if (s.x.coeffs.size() != s.x.basis.size()) out.push_back("attribute vector size mismatch");
  if (!s.w.basis.is_square_of(s.basis())) {
    out.push_back("weight basis is not the square of the vertex basis");
  }
  if (!s.a.basis.is_square_of(s.basis())) {
    out.push_back("adjacency basis is not the square of the vertex basis");
  }
  if (s.w.coeffs.size() != s.w.basis.size() || s.a.coeffs.size() != s.a.basis.size()) {
    out.push_back("tensor size mismatch");
  }
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < s.a.coeffs.size(); ++i) {
    const EdgeKey k = s.a.basis[i];
    if (s.a.coeffs[i] > 1) out.push_back("adjacency bit outside {0,1} at " + pair_text(k));
    if (s.a.coeffs[i] == 0 && s.w.coeffs[i] != 0.0) {
      out.push_back("nonzero weight on absent edge " + pair_text(k));
    }
    if (!allow_loops && k.from == k.to && s.a.coeffs[i] != 0) {
      out.push_back("loop " + pair_text(k) + " where loops are not allowed");
    }
  }
  return out;
}

bool is_canonical(const State& s) { return state_violations(s).empty(); }

void mask_weights(State& s) {
  for (std::size_t i = 0; i < s.w.coeffs.size(); ++i) {
    if (s.a.coeffs[i] == 0) s.w.coeffs[i] = 0.0;
  }
}

State combine(Combine op, const State& x, const State& y) {
  BasisSet basis = op == Combine::Union ? x.basis().unite(y.basis())
                                        : x.basis().intersect(y.basis());
  const std::size_t n = basis.size();
  // Operand position of each result label, or npos when absent.
  constexpr auto npos = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> xi(n, npos);
  std::vector<std::size_t> yi(n, npos);
  for (std::size_t r = 0; r < n; ++r) {
    if (auto i = x.basis().index_of(basis[r])) xi[r] = *i;
    if (auto i = y.basis().index_of(basis[r])) yi[r] = *i;
  }

  std::vector<double> xs(n, 0.0);
  std::vector<double> ws(n * n, 0.0);
  std::vector<std::uint8_t> as(n * n, 0);
  const std::size_t nx = x.dim();
  const std::size_t ny = y.dim();
  for (std::size_t r = 0; r < n; ++r) {
    xs[r] = (xi[r] != npos ? x.x.coeffs[xi[r]] : 0.0) + (yi[r] != npos ? y.x.coeffs[yi[r]] : 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      const bool in_x = xi[r] != npos && xi[c] != npos;
      const bool in_y = yi[r] != npos && yi[c] != npos;
      const double wx = in_x ? x.w.coeffs[xi[r] * nx + xi[c]] : 0.0;
      const double wy = in_y ? y.w.coeffs[yi[r] * ny + yi[c]] : 0.0;
      const std::uint8_t ax = in_x ? x.a.coeffs[xi[r] * nx + xi[c]] : 0;
      const std::uint8_t ay = in_y ? y.a.coeffs[yi[r] * ny + yi[c]] : 0;
      ws[r * n + c] = wx + wy;
      as[r * n + c] = op == Combine::Union ? (ax | ay) : (ax & ay);
    }
  }
  return make_state(std::move(basis), std::move(xs), std::move(ws), std::move(as));
}

State scale(double lambda, const State& s) {
  State out = s;
  for (auto& v : out.x.coeffs) v *= lambda;
  for (auto& v : out.w.coeffs) v *= lambda;
  mask_weights(out);
  return out;
}

StateFlags classify_state(const State& s, const BasisSet& universe) {
  StateFlags flags;
  flags.total = s.basis() == universe;
  flags.complete = true;
  flags.null = true;
  for (double v : s.x.coeffs) flags.null = flags.null && v == 0.0;
  for (double v : s.w.coeffs) flags.null = flags.null && v == 0.0;
  const std::size_t n = s.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        flags.has_loops = flags.has_loops || s.adjacent(i, i);
      } else if (!s.adjacent(i, j)) {
        flags.complete = false;
      }
    }
  }
  return flags;
}

State null_complete(const BasisSet& basis, bool loops) {
  const std::size_t n = basis.size();
  std::vector<std::uint8_t> a(n * n, 1);
  if (!loops) {
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 0;
  }
  return make_state(basis, std::vector<double>(n, 0.0), std::vector<double>(n * n, 0.0),
                    std::move(a));
}

State unit_of(const State& s) {
  State out = s;
  std::fill(out.x.coeffs.begin(), out.x.coeffs.end(), 1.0);
  for (std::size_t i = 0; i < out.w.coeffs.size(); ++i) {
    out.w.coeffs[i] = out.a.coeffs[i] != 0 ? 1.0 : 0.0;
  }
  return out;
}

State unit_on(const BasisSet& basis) {
  const std::size_t n = basis.size();
  return make_state(basis, std::vector<double>(n, 1.0), std::vector<double>(n * n, 1.0),
                    std::vector<std::uint8_t>(n * n, 1));
}

double max_abs_diff(const State& lhs, const State& rhs) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (lhs.basis() != rhs.basis() || lhs.a != rhs.a) return inf;
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.x.coeffs.size(); ++i) {
    worst = std::max(worst, std::abs(lhs.x.coeffs[i] - rhs.x.coeffs[i]));
  }
  for (std::size_t i = 0; i < lhs.w.coeffs.size(); ++i) {
    worst = std::max(worst, std::abs(lhs.w.coeffs[i] - rhs.w.coeffs[i]));
  }
  return worst;
}

}  // namespace gss
