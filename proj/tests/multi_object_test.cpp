#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "lao/errors.hpp"
#include "lao/multi_object.hpp"

namespace lao {
namespace {

using namespace lao::testing;

MultiObjectSpec section_spec(std::vector<std::vector<double>> given) {
  return {three_hypotheses(), std::move(given)};
}

std::vector<HypothesisTuple> all_tuples(const CompoundReliabilityTensor& t) {
  std::vector<HypothesisTuple> out;
  for (std::size_t a = 0; a < t.tuple_count(); ++a) out.push_back(t.tuple_at(a));
  return out;
}

TEST(Tensor, ConstructionGuards) {
  const auto e = build_matrix(three_hypotheses(), {{0.05, 0.05}});
  EXPECT_THROW(compose_tensor({e}), InvalidArgument);
  EXPECT_THROW(compose_tensor({e, build_matrix(two_hypotheses(), {{0.05}})}), InvalidArgument);
  const auto t = compose_tensor({e, e});
  EXPECT_THROW(t({0, 0}, {0, 3}), InvalidArgument);
  EXPECT_THROW(t({0, 0, 0}, {0, 1, 0}), InvalidArgument);
  EXPECT_THROW(t.decompose({1, 1}, {1, 1}), InvalidArgument);
}

TEST(Tensor, TupleIndexing) {
  const auto e = build_matrix(three_hypotheses(), {{0.05, 0.05}});
  const auto t = compose_tensor({e, e, e});
  EXPECT_EQ(t.tuple_count(), 27u);
  EXPECT_EQ(t.tuple_at(0), (HypothesisTuple{0, 0, 0}));
  EXPECT_EQ(t.tuple_at(1), (HypothesisTuple{0, 0, 1}));
  EXPECT_EQ(t.tuple_at(9), (HypothesisTuple{1, 0, 0}));
  EXPECT_EQ(t.tuple_at(26), (HypothesisTuple{2, 2, 2}));
}

TEST(Tensor, BothIndicesDifferIsSumOfMatrixEntries) {
  const auto spec = section_spec({{0.05, 0.05}, {0.07, 0.3}});
  const auto t = build_compound(spec);
  const auto e0 = build_matrix(spec.hypotheses, spec.object_given(0));
  const auto e1 = build_matrix(spec.hypotheses, spec.object_given(1));
  EXPECT_DOUBLE_EQ(t({1, 0}, {0, 1}), e0(1, 0) + e1(0, 1));
  const auto terms = t.decompose({1, 0}, {0, 1});
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].object, 0u);
  EXPECT_EQ(terms[1].accepted, 1u);
  EXPECT_FALSE(terms[0].correct_decision);
}

TEST(Tensor, AdditivityOnRandomTuples) {
  const auto spec = section_spec({{0.05, 0.05}, {0.02, 0.6}, {0.09, 1.0}});
  const auto t = build_compound(spec);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> pick(0, 2);
  for (int i = 0; i < 200; ++i) {
    HypothesisTuple a{pick(rng), pick(rng), pick(rng)};
    HypothesisTuple b{pick(rng), pick(rng), pick(rng)};
    if (a == b) continue;
    double sum = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      if (a[k] != b[k]) sum += t.object_matrix(k)(a[k], b[k]);
    }
    EXPECT_DOUBLE_EQ(t(a, b), sum);
  }
}

TEST(Tensor, DiagonalIsExhaustiveRowMinimum) {
  const auto spec = section_spec({{0.05, 0.05}, {0.02, 0.6}, {0.09, 1.0}});
  auto t = build_compound(spec);
  const auto check = [&] {
    for (const auto& a : all_tuples(t)) {
      double best = kInfinity;
      for (const auto& b : all_tuples(t)) {
        if (a != b) best = std::min(best, t(a, b));
      }
      EXPECT_DOUBLE_EQ(t(a, a), best);
    }
  };
  check();
  t.set_correct_decision_exponent(0, 1, 0.3);
  t.set_correct_decision_exponent(2, 1, 2.0);
  check();
}

TEST(Tensor, PermutingObjectsPermutesEntries) {
  const std::vector<std::vector<double>> given{{0.05, 0.05}, {0.02, 0.6}, {0.09, 1.0}};
  const auto t = build_compound(section_spec(given));
  const std::vector<std::size_t> perm{2, 0, 1};
  std::vector<std::vector<double>> permuted;
  for (auto p : perm) permuted.push_back(given[p]);
  const auto tp = build_compound(section_spec(permuted));
  const auto apply = [&](const HypothesisTuple& x) {
    HypothesisTuple y(3);
    for (std::size_t i = 0; i < 3; ++i) y[i] = x[perm[i]];
    return y;
  };
  for (const auto& a : all_tuples(t)) {
    for (const auto& b : all_tuples(t)) EXPECT_DOUBLE_EQ(tp(apply(a), apply(b)), t(a, b));
  }
}

TEST(Tensor, SymmetricConfigIsPermutationSymmetric) {
  const auto t = build_compound(section_spec({{0.05, 0.05}, {0.05, 0.05}, {0.05, 0.05}}));
  EXPECT_DOUBLE_EQ(t({1, 0, 0}, {0, 0, 2}), t({0, 1, 0}, {2, 0, 0}));
  EXPECT_DOUBLE_EQ(t({1, 0, 0}, {0, 0, 2}), t({0, 0, 1}, {0, 2, 0}));
}

TEST(BuildCompound, PropagatesViolations) {
  EXPECT_THROW(build_compound(section_spec({{0.05, 0.05}, {0.2, 0.05}})), ConditionViolation);
  const auto t = build_compound(section_spec({{0.05, 0.05}, {0.2, 0.05}}), {.force = true});
  EXPECT_EQ(t.object_matrix(1)(2, 0), 0.0);
  EXPECT_THROW(build_compound(section_spec({{0.05, 0.05}})), InvalidArgument);
}

TEST(CheckConditionsMulti, MatchesPerObjectChecks) {
  const auto spec = section_spec({{0.05, 0.05}, {0.2, 0.05}, {0.05, 1.2}});
  const auto report = check_conditions_multi(spec);
  EXPECT_FALSE(report.ok);
  ASSERT_EQ(report.per_object.size(), 3u);
  EXPECT_TRUE(report.per_object[0].ok);
  EXPECT_FALSE(report.per_object[1].ok);
  EXPECT_TRUE(report.per_object[2].ok);
}

TEST(ClassifyFamily, Labels) {
  EXPECT_EQ(classify_family({{0.1, 0.2}, {0.3, 0.4}}).label, Family::kA);
  const auto b = classify_family({{0.0, 0.2}, {0.0, 0.4}, {0.1, 0.1}});
  EXPECT_EQ(b.label, Family::kB);
  EXPECT_EQ(b.witness.size(), 2u);
  const auto c = classify_family({{0.1, 0.0}, {0.0, 0.4}, {0.1, 0.1}});
  EXPECT_EQ(c.label, Family::kC);
  ASSERT_EQ(c.witness.size(), 2u);
  EXPECT_EQ(c.witness[0], (std::pair<std::size_t, std::size_t>{1, 0}));
}

TEST(FamilyCFill, ZeroEntryAndRoundTrip) {
  const auto spec = section_spec({{0.05, 0.0}, {0.05, 0.05}, {0.05, 0.05}});
  const std::array<double, 3> g{0.1, 0.12, 0.14};
  const auto fill = family_c_fill(spec, 1, g);
  EXPECT_EQ(fill.tensor({1, 1, 1}, {2, 2, 2}), 0.0);
  const auto back = fill.reconstructed_givens();
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(back[i], g[i], 1e-12);
  EXPECT_NEAR(fill.tensor({1, 1, 1}, {2, 1, 1}), g[0], 1e-12);
  EXPECT_NEAR(fill.tensor({1, 1, 1}, {1, 2, 1}), g[1], 1e-12);
  EXPECT_NEAR(fill.tensor({1, 1, 1}, {1, 1, 2}), g[2], 1e-12);
  EXPECT_EQ(fill.tensor({1, 1, 1}, {1, 1, 1}), 0.0);
}

TEST(FamilyCFill, RejectsBadInput) {
  const auto spec = section_spec({{0.05, 0.0}, {0.05, 0.05}, {0.05, 0.05}});
  EXPECT_THROW(family_c_fill(spec, 1, {0.1, 0.1, 0.5}), InvalidArgument);
  EXPECT_THROW(family_c_fill(spec, 0, {0.1, 0.1, 0.1}), InvalidArgument);
  EXPECT_THROW(family_c_fill(spec, 2, {0.1, 0.1, 0.1}), InvalidArgument);
  EXPECT_THROW(family_c_fill(section_spec({{0.05, 0.0}, {0.05, 0.05}}), 1, {0.1, 0.1, 0.1}),
               InvalidArgument);
}

}  // namespace
}  // namespace lao
