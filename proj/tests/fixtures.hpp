#pragma once

#include <random>
#include <vector>

#include "lao/single_object.hpp"

namespace lao::testing {

// The worked binary example: three hypotheses on {0, 1}.
inline Distribution g1() { return Distribution({0.10, 0.90}); }
inline Distribution g2() { return Distribution({0.85, 0.15}); }
inline Distribution g3() { return Distribution({0.23, 0.77}); }

inline HypothesisSet three_hypotheses(double base = kDefaultLogBase) {
  return HypothesisSet({g1(), g2(), g3()}, base);
}
inline HypothesisSet two_hypotheses(double base = kDefaultLogBase) {
  return HypothesisSet({g1(), g2()}, base);
}

// Frozen from tests/oracle/reference_values.py (mpmath, 50 digits), base 2.
inline constexpr double kD21 = 2.2365990399546151;
inline constexpr double kD12 = 2.0177199665240066;
inline constexpr double kD31 = 0.10307454023024414;
inline constexpr double kD32 = 1.3833792122979563;
inline constexpr double kD13 = 0.08239651395433096;
inline constexpr double kD23 = 1.2489702413056281;
inline constexpr double kBall01Target2 = 1.3926050694478185;
inline constexpr double kE21TwoHyp = 1.5721997335556078;
inline constexpr double kE12ThreeHyp = 1.7120527340578116;
inline constexpr double kE31ThreeHyp = 0.0077657113803246238;
inline constexpr double kE32ThreeHyp = 0.86893098568787103;
inline constexpr double kLogAlpha21N500 = -793.62510820981649;
inline constexpr double kLogAlpha21N200 = -320.34959633127607;
inline constexpr double kCorrect11N200 = 0.99976559062205744;
inline constexpr double kCompoundLogAlphaN200 = -640.69953088344187;

// Random distribution with every entry at least `floor`.
inline Distribution random_distribution(std::mt19937_64& rng, std::size_t k, double floor = 0.0) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(k);
  double total = 0.0;
  for (auto& x : p) total += (x = e(rng));
  for (auto& x : p) x = floor + (1.0 - floor * static_cast<double>(k)) * x / total;
  return Distribution(p);
}

}  // namespace lao::testing
