#include <gtest/gtest.h>

#include <cmath>

#include "graphstate/embedding.hpp"
#include "graphstate/glv.hpp"
#include "graphstate/variable_basis.hpp"
#include "support.hpp"

using namespace gss;
using namespace gss::testing;

TEST(BasisSet, SortsAndRejectsDuplicates) {
  const BasisSet b(std::vector<Label>{4, 1, 3});
  EXPECT_EQ(b.labels(), (std::vector<Label>{1, 3, 4}));
  EXPECT_EQ(*b.index_of(3), 1u);
  EXPECT_FALSE(b.index_of(2).has_value());
  EXPECT_THROW(BasisSet(std::vector<Label>{1, 1}), BasisError);
  EXPECT_EQ(b.unite({2, 3}), (BasisSet{1, 2, 3, 4}));
  EXPECT_EQ(b.intersect({2, 3}), (BasisSet{3}));
  EXPECT_TRUE((BasisSet{1, 4}).is_subset_of(b));
  EXPECT_FALSE((BasisSet{1, 2}).is_subset_of(b));
  EXPECT_TRUE(BasisSet().is_subset_of(b));
}

TEST(PairBasis, SquareIsRowMajor) {
  const BasisSet b{2, 5, 7};
  const PairBasis sq = PairBasis::square(b);
  ASSERT_EQ(sq.size(), 9u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(*sq.index_of({b[i], b[j]}), i * 3 + j);
    }
  }
  EXPECT_TRUE(sq.is_square_of(b));
  EXPECT_FALSE(sq.is_square_of({2, 5}));
}

TEST(VBVector, CombineExamples) {
  const VBVector x({2, 3}, {1, 2});
  const VBVector y({1, 2, 3, 4}, {10, 20, 30, 40});
  EXPECT_EQ(combine(Combine::Union, x, y), VBVector({1, 2, 3, 4}, {10, 21, 32, 40}));
  EXPECT_EQ(combine(Combine::Inter, x, y), VBVector({2, 3}, {21, 32}));
  EXPECT_EQ(combine(Combine::Union, x, VBVector()), x);
  EXPECT_EQ(x.at(2), 1.0);
  EXPECT_EQ(x.at(9), 0.0);
  EXPECT_THROW(VBVector({1, 2}, {1.0}), BasisError);
}

TEST(VBTensor, CombineExamples) {
  const VBTensor w(PairBasis({{1, 2}}), {0.3});
  const VBTensor v(PairBasis({{1, 2}, {2, 3}}), {0.1, 1.0});
  const VBTensor u = combine(Combine::Union, w, v);
  EXPECT_EQ(u.basis, PairBasis({{1, 2}, {2, 3}}));
  EXPECT_DOUBLE_EQ(u.at({1, 2}), 0.4);
  EXPECT_EQ(u.at({2, 3}), 1.0);
  const VBTensor n = combine(Combine::Inter, w, v);
  EXPECT_EQ(n.basis, PairBasis({{1, 2}}));
  EXPECT_DOUBLE_EQ(n.at({1, 2}), 0.4);
  EXPECT_EQ(combine(Combine::Union, w, VBTensor()), w);
}

TEST(BoolTensor, CombineExamples) {
  const BoolTensor a(PairBasis({{1, 2}}), {1});
  const BoolTensor e(PairBasis({{1, 2}, {2, 1}}), {1, 1});
  EXPECT_EQ(combine(Combine::Inter, a, e), BoolTensor(PairBasis({{1, 2}}), {1}));
  const BoolTensor z(PairBasis({{1, 2}, {2, 1}}), {0, 0});
  EXPECT_EQ(combine(Combine::Union, e, z), e);
  EXPECT_EQ(combine(Combine::Union, z, z), z);
  EXPECT_EQ(combine(Combine::Union, a, BoolTensor()), a);
  EXPECT_THROW(BoolTensor(PairBasis({{1, 2}}), {2}), BasisError);
}

TEST(State, MakeStateMasksWeights) {
  const State s = make_state({1, 2}, {1.0, 2.0}, {0.5, 0.6, 0.7, 0.8}, {1, 0, 0, 1});
  EXPECT_EQ(s.w.coeffs, (std::vector<double>{0.5, 0.0, 0.0, 0.8}));
  EXPECT_TRUE(is_canonical(s));
}

TEST(State, ViolationsAreReported) {
  State s = make_state({1, 2}, {1.0, 2.0}, {0, 0, 0, 0}, {1, 0, 0, 0});
  s.w.coeffs[1] = 0.25;
  auto v = state_violations(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("nonzero weight on absent edge (1,2)"), std::string::npos);
  EXPECT_FALSE(state_violations(s, false).empty());

  State wrong = make_state({1, 2}, {1.0, 2.0}, {0, 0, 0, 0}, {0, 0, 0, 0});
  wrong.w = VBTensor(PairBasis({{1, 2}}), {0.0});
  EXPECT_FALSE(is_canonical(wrong));
}

TEST(State, Identities) {
  Rng rng(41);
  const BasisSet u(universe_of(12));
  for (int i = 0; i < 100; ++i) {
    const State x = phi(random_graph(rng));
    EXPECT_EQ(combine(Combine::Union, x, empty_state()), x);
    EXPECT_EQ(combine(Combine::Inter, x, null_complete(u, true)), x);
  }
}

TEST(State, Scale) {
  Rng rng(43);
  for (int i = 0; i < 50; ++i) {
    const State x = phi(random_graph(rng));
    EXPECT_EQ(scale(1.0, x), x);
    const State z = scale(0.0, x);
    EXPECT_EQ(z.a, x.a);
    EXPECT_TRUE(classify_state(z, x.basis()).null);
  }
  const State one = make_state({1}, {0.5}, {0.25}, {1});
  EXPECT_EQ(scale(2.0, one), make_state({1}, {1.0}, {0.5}, {1}));
}

TEST(State, CombineStaysCanonical) {
  Rng rng(47);
  for (int i = 0; i < 200; ++i) {
    const State x = phi(random_graph(rng));
    const State y = phi(overlapping_graph(rng, phi_inv(x, true)));
    EXPECT_TRUE(is_canonical(combine(Combine::Union, x, y)));
    EXPECT_TRUE(is_canonical(combine(Combine::Inter, x, y)));
  }
}

TEST(State, Classification) {
  const BasisSet u{1, 2, 3};
  const StateFlags id = classify_state(null_complete(u, false), u);
  EXPECT_TRUE(id.total && id.complete && id.null);
  EXPECT_FALSE(id.has_loops);

  const StateFlags empty = classify_state(empty_state(), u);
  EXPECT_FALSE(empty.total);
  EXPECT_TRUE(empty.complete && empty.null);
  EXPECT_FALSE(empty.has_loops);

  const StateFlags init = classify_state(build_initial_state(), stein_universe());
  EXPECT_FALSE(init.total);
  EXPECT_TRUE(init.complete && init.has_loops);
  EXPECT_FALSE(init.null);
}

TEST(State, Units) {
  const State s = make_state({1, 2}, {3.0, 4.0}, {0.5, 0.0, 0.0, 0.0}, {1, 0, 0, 0});
  const State u = unit_of(s);
  EXPECT_EQ(u.x.coeffs, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(u.w.coeffs, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
  EXPECT_EQ(u.a, s.a);
  const State full = unit_on({1, 2});
  EXPECT_EQ(full.a.coeffs, (std::vector<std::uint8_t>{1, 1, 1, 1}));
}

TEST(State, MaxAbsDiff) {
  const State a = make_state({1}, {1.0}, {0.5}, {1});
  const State b = make_state({1}, {1.25}, {0.0}, {1});
  EXPECT_DOUBLE_EQ(max_abs_diff(a, b), 0.5);
  EXPECT_TRUE(std::isinf(max_abs_diff(a, make_state({2}, {1.0}, {0.5}, {1}))));
}
