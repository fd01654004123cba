#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "lao/errors.hpp"
#include "lao/simulation.hpp"

namespace lao {
namespace {

using namespace lao::testing;

TEST(ExactError, FrozenTwoHypothesisValues) {
  const auto h = two_hypotheses();
  const auto regions = make_regions(h, {{0.05}});
  EXPECT_NEAR(exact_error(h, regions, 1, 0, 500).log_alpha, kLogAlpha21N500, 1e-8);
  EXPECT_NEAR(exact_error(h, regions, 1, 0, 200).log_alpha, kLogAlpha21N200, 1e-8);
  const auto correct = exact_error(h, regions, 0, 0, 200);
  EXPECT_NEAR(correct.alpha, kCorrect11N200, 1e-12);
  const auto reject = exact_error(h, regions, 0, 0, 200, Event::kRejection);
  EXPECT_NEAR(reject.alpha, 1.0 - kCorrect11N200, 1e-12);
}

TEST(ExactError, DecisionsPartitionTheSampleSpace) {
  const auto h = three_hypotheses();
  const auto regions = make_regions(h, {{0.05, 0.05}});
  for (std::size_t m = 0; m < 3; ++m) {
    double total = 0.0;
    for (std::size_t l = 0; l < 3; ++l) total += exact_error(h, regions, m, l, 40).alpha;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(ExactError, Guards) {
  const auto h = three_hypotheses();
  const auto regions = make_regions(h, {{0.05, 0.05}});
  EXPECT_THROW(exact_error(h, regions, 0, 1, 0), InvalidArgument);
  EXPECT_THROW(exact_error(h, regions, 3, 1, 10), InvalidArgument);
  EXPECT_THROW(exact_error(h, regions, 0, 1, 10, Event::kRejection), InvalidArgument);
  const HypothesisSet wide({Distribution({0.25, 0.25, 0.25, 0.25}), Distribution({0.4, 0.3, 0.2, 0.1})});
  EXPECT_THROW(exact_error(wide, make_regions(wide, {{0.1}}), 1, 0, 10'000), NumericalError);
}

TEST(ExactError, ImpossibleEventIsExactZero) {
  const HypothesisSet h({Distribution({1.0, 0.0}), Distribution({0.0, 1.0})});
  const auto regions = make_regions(h, {{0.5}});
  EXPECT_TRUE(exact_error(h, regions, 1, 0, 10).exact_zero());
}

TEST(CompoundExactError, ProductOfPerObjectProbabilities) {
  const auto h = two_hypotheses();
  const std::vector<DecisionRegions> regions(3, make_regions(h, {{0.05}}));
  const auto est = compound_exact_error(h, regions, {1, 0, 1}, {0, 0, 0}, 200);
  EXPECT_NEAR(est.log_alpha, kCompoundLogAlphaN200, 1e-8);

  const auto h3 = three_hypotheses();
  const std::vector<DecisionRegions> r3{make_regions(h3, {{0.05, 0.05}}), make_regions(h3, {{0.02, 0.4}})};
  const auto joint = compound_exact_error(h3, r3, {2, 1}, {0, 1}, 60);
  const double product = exact_error(h3, r3[0], 2, 0, 60).alpha * exact_error(h3, r3[1], 1, 1, 60).alpha;
  EXPECT_NEAR(joint.alpha, product, 1e-12 * product);
}

TEST(CompoundExactError, RejectionComplementsAllCorrect) {
  const auto h = three_hypotheses();
  const std::vector<DecisionRegions> regions(2, make_regions(h, {{0.05, 0.05}}));
  const auto all_correct = compound_exact_error(h, regions, {0, 2}, {0, 2}, 50);
  const auto rejection = compound_exact_error(h, regions, {0, 2}, {0, 2}, 50, Event::kRejection);
  EXPECT_NEAR(all_correct.alpha + rejection.alpha, 1.0, 1e-12);
}

TEST(MonteCarlo, MatchesExactWithinThreeSigma) {
  const auto h = three_hypotheses();
  const auto regions = make_regions(h, {{0.05, 0.05}});
  const std::uint64_t trials = 40'000;
  for (auto [m, l] : {std::pair<std::size_t, std::size_t>{0, 2}, {2, 0}, {1, 1}}) {
    const double p = exact_error(h, regions, m, l, 12).alpha;
    const auto mc = monte_carlo_error(h, regions, m, l, 12, {trials, 99, 2});
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    EXPECT_NEAR(mc.alpha, p, 3.0 * sigma + 1e-12) << m << "|" << l;
    EXPECT_EQ(mc.trials, trials);
    EXPECT_EQ(mc.seed, 99u);
  }
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  const auto h = three_hypotheses();
  const std::vector<DecisionRegions> regions(2, make_regions(h, {{0.05, 0.05}}));
  const auto serial = monte_carlo_error(h, regions, {2, 0}, {0, 0}, 8, {5000, 1234, 1});
  const auto parallel = monte_carlo_error(h, regions, {2, 0}, {0, 0}, 8, {5000, 1234, 4});
  EXPECT_EQ(serial.hits, parallel.hits);
  const auto again = monte_carlo_error(h, regions, {2, 0}, {0, 0}, 8, {5000, 1234, 3});
  EXPECT_EQ(serial.hits, again.hits);
  const auto other = monte_carlo_error(h, regions, {2, 0}, {0, 0}, 8, {5000, 1235, 1});
  EXPECT_NE(serial.hits, other.hits);
}

TEST(FitExponent, RecoversSyntheticSlope) {
  const std::vector<std::uint64_t> n{10, 20, 30, 40};
  std::vector<double> logs;
  for (auto x : n) logs.push_back(-(1.5 * static_cast<double>(x) + 2.0));
  const auto fit = fit_exponent(n, logs);
  EXPECT_NEAR(fit.slope, 1.5, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(fit.endpoint_ratio, 62.0 / 40.0, 1e-12);
  EXPECT_FALSE(fit.infinite);
}

TEST(FitExponent, InfiniteAndGuards) {
  const std::vector<std::uint64_t> n{10, 20, 30};
  const std::vector<double> logs{-1.0, -kInfinity, -3.0};
  const auto fit = fit_exponent(n, logs);
  EXPECT_TRUE(fit.infinite);
  EXPECT_EQ(fit.slope, kInfinity);
  const std::vector<std::uint64_t> short_grid{10, 20};
  EXPECT_THROW(fit_exponent(short_grid, std::vector<double>{-1.0, -2.0}), InvalidArgument);
  const std::vector<std::uint64_t> unsorted{10, 30, 20};
  EXPECT_THROW(fit_exponent(unsorted, std::vector<double>{-1.0, -2.0, -3.0}), InvalidArgument);
}

TEST(FitExponent, ExactSlopeTracksBuiltReliability) {
  const auto h = two_hypotheses();
  const auto regions = make_regions(h, {{0.05}});
  const std::vector<std::uint64_t> n{200, 600, 1000, 1400};
  const auto fit = fit_exponent(h, regions, 1, 0, n);
  EXPECT_NEAR(fit.slope / kE21TwoHyp, 1.0, 0.05);
  EXPECT_GT(fit.r_squared, 0.999);
}

}  // namespace
}  // namespace lao
