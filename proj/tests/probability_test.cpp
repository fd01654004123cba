#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "lao/errors.hpp"
#include "lao/probability.hpp"

namespace lao {
namespace {

using namespace lao::testing;

TEST(Distribution, RenormalizesNearUnitMass) {
  const Distribution d({0.3, 0.7 + 1e-10});
  EXPECT_NEAR(d[0] + d[1], 1.0, 1e-15);
  const Distribution raw({0.85, 0.15});
  EXPECT_DOUBLE_EQ(raw[0], 0.85);
}

TEST(Distribution, RejectsBadInput) {
  EXPECT_THROW(Distribution({1.0}), InvalidArgument);
  EXPECT_THROW(Distribution({0.5, 0.4}), InvalidArgument);
  EXPECT_THROW(Distribution({-0.1, 1.1}), InvalidArgument);
  EXPECT_THROW(Distribution({NAN, 1.0}), InvalidArgument);
  EXPECT_THROW(Distribution({INFINITY, 0.0}), InvalidArgument);
}

TEST(Distribution, RandomMassSumsToOne) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto d = random_distribution(rng, 2 + i % 6);
    const auto p = d.probs();
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
  }
}

TEST(KlDivergence, FrozenValues) {
  EXPECT_NEAR(kl_divergence(g2(), g1()), kD21, 1e-12);
  EXPECT_NEAR(kl_divergence(g1(), g2()), kD12, 1e-12);
  EXPECT_NEAR(kl_divergence(g3(), g1()), kD31, 1e-12);
  EXPECT_NEAR(kl_divergence(g3(), g2()), kD32, 1e-12);
  EXPECT_NEAR(kl_divergence(g1(), g3()), kD13, 1e-12);
  EXPECT_NEAR(kl_divergence(g2(), g3()), kD23, 1e-12);
}

TEST(KlDivergence, ZeroConventions) {
  const Distribution point({1.0, 0.0});
  const Distribution half({0.5, 0.5});
  EXPECT_DOUBLE_EQ(kl_divergence(point, half), 1.0);
  EXPECT_EQ(kl_divergence(half, point), kInfinity);
  EXPECT_EQ(kl_divergence(point, point), 0.0);
}

TEST(KlDivergence, BaseChangeScales) {
  EXPECT_NEAR(kl_divergence(g2(), g1(), std::exp(1.0)), kD21 * std::log(2.0), 1e-12);
  EXPECT_NEAR(kl_divergence(g2(), g1(), 10.0), kD21 * std::log10(2.0), 1e-12);
  EXPECT_THROW(kl_divergence(g2(), g1(), 1.0), InvalidArgument);
}

TEST(KlDivergence, NonnegativeAndZeroOnlyOnDiagonal) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const std::size_t k = 2 + i % 5;
    const auto q = random_distribution(rng, k);
    const auto g = random_distribution(rng, k, 1e-3);
    EXPECT_GE(kl_divergence(q, g), 0.0);
    EXPECT_EQ(kl_divergence(q, q), 0.0);
  }
}

TEST(KlDivergence, AlphabetMismatchThrows) {
  EXPECT_THROW(kl_divergence(g1(), Distribution({0.2, 0.3, 0.5})), InvalidArgument);
}

TEST(EmpiricalType, CountsSymbols) {
  const std::vector<std::size_t> sample{0, 2, 2, 1, 2};
  const auto t = empirical_type(sample, 3);
  EXPECT_EQ(t.counts, (std::vector<std::uint64_t>{1, 1, 3}));
  EXPECT_EQ(t.n, 5u);
  EXPECT_DOUBLE_EQ(t.distribution()[2], 0.6);
}

TEST(EmpiricalType, RejectsOutOfRangeAndEmpty) {
  const std::vector<std::size_t> bad{0, 3};
  EXPECT_THROW(empirical_type(bad, 3), InvalidArgument);
  EXPECT_THROW(empirical_type({}, 3), InvalidArgument);
}

TEST(EnumerateTypes, CountMatchesBinomialAndOrder) {
  for (std::uint64_t n : {1u, 2u, 5u, 12u}) {
    for (std::size_t k : {2u, 3u, 4u}) {
      const auto types = enumerate_types(n, k);
      EXPECT_EQ(types.size(), type_count(n, k));
      // C(n + k - 1, k - 1)
      double expected = 1.0;
      for (std::size_t j = 1; j < k; ++j) expected = expected * static_cast<double>(n + j) / j;
      EXPECT_EQ(types.size(), static_cast<std::size_t>(std::llround(expected)));
      EXPECT_EQ(types.front().counts.back(), n);
      for (std::size_t i = 0; i < types.size(); ++i) {
        const auto& c = types[i].counts;
        EXPECT_EQ(std::accumulate(c.begin(), c.end(), std::uint64_t{0}), n);
        if (i) EXPECT_TRUE(types[i - 1].counts < c);
      }
    }
  }
}

TEST(TypeCount, Saturates) {
  EXPECT_EQ(type_count(1'000'000, 40), UINT64_MAX);
  EXPECT_EQ(type_count(2000, 2), 2001u);
}

TEST(TypeClassProbability, SumsToOne) {
  const Distribution g({0.2, 0.5, 0.3});
  std::vector<double> logs;
  for (const auto& t : enumerate_types(30, 3)) {
    logs.push_back(type_class_log_probability(t, g, std::exp(1.0)));
  }
  EXPECT_NEAR(log_sum_exp(logs), 0.0, 1e-12);
}

TEST(TypeClassProbability, BinomialForm) {
  const EmpiricalType t{{3, 7}, 10};
  const double expected = std::log2(120.0 * std::pow(0.1, 3) * std::pow(0.9, 7));
  EXPECT_NEAR(type_class_log_probability(t, g1()), expected, 1e-12);
}

TEST(TypeClassProbability, UnsupportedSymbolIsMinusInfinity) {
  const EmpiricalType t{{1, 4}, 5};
  EXPECT_EQ(type_class_log_probability(t, Distribution({0.0, 1.0})), -kInfinity);
}

TEST(LogSumExp, StableAndEdgeCases) {
  EXPECT_EQ(log_sum_exp({}), -kInfinity);
  const std::vector<double> all_neg{-kInfinity, -kInfinity};
  EXPECT_EQ(log_sum_exp(all_neg), -kInfinity);
  const std::vector<double> big{1000.0, 1000.0};
  EXPECT_NEAR(log_sum_exp(big), 1000.0 + std::log(2.0), 1e-12);
  const std::vector<double> tiny{-2000.0, -2000.0 + std::log(3.0)};
  EXPECT_NEAR(log_sum_exp(tiny), -2000.0 + std::log(4.0), 1e-12);
}

}  // namespace
}  // namespace lao
