#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lao/multi_object.hpp"
#include "lao/single_object.hpp"

namespace lao {

enum class Method { kExact, kMonteCarlo };

/// Which event an error estimate measures when accepted == truth.
enum class Event {
  /// The test outputs `accepted`.
  kAcceptance,
  /// The test rejects the true hypothesis (sum over every other output);
  /// only meaningful when accepted == truth.
  kRejection,
};

struct ErrorEstimate {
  /// Probability; may underflow to 0 for tiny values, see log_alpha.
  double alpha = 0.0;
  /// log alpha in the hypothesis set's base; -inf iff the event is impossible.
  double log_alpha = 0.0;
  std::uint64_t n = 0;
  Method method = Method::kExact;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  /// Monte Carlo hit count.
  std::optional<std::uint64_t> hits;

  bool exact_zero() const { return log_alpha == -kInfinity; }
};

/// Largest number of types exact_error will enumerate for one length.
inline constexpr std::uint64_t kMaxExactTypes = 5'000'000;

/// Probability that the test built on `regions` outputs accepted_l (or
/// rejects true_m, for Event::kRejection) on n samples drawn from
/// h[true_m], summed exactly over type classes.
ErrorEstimate exact_error(const HypothesisSet& h, const DecisionRegions& regions,
                          std::size_t true_m, std::size_t accepted_l, std::uint64_t n,
                          Event event = Event::kAcceptance);

/// Exact compound probability for K independent objects: the product of the
/// per-object probabilities of outputting accepted[i] under truth[i]
/// (errors where they differ, correct decisions where they agree). With
/// Event::kRejection and truth == accepted it is the probability that at
/// least one object decides wrongly.
ErrorEstimate compound_exact_error(const HypothesisSet& h,
                                   std::span<const DecisionRegions> per_object,
                                   const HypothesisTuple& truth, const HypothesisTuple& accepted,
                                   std::uint64_t n, Event event = Event::kAcceptance);

struct MonteCarloOptions {
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  /// Worker threads; results do not depend on this.
  unsigned threads = 1;
};

/// Relative frequency of the compound decision `accepted` over independent
/// trials, each drawing n samples per object from h[truth[i]]. Trial t uses
/// its own generator keyed by (seed, t), so the estimate is a pure function
/// of the inputs regardless of thread count.
ErrorEstimate monte_carlo_error(const HypothesisSet& h, std::span<const DecisionRegions> per_object,
                                const HypothesisTuple& truth, const HypothesisTuple& accepted,
                                std::uint64_t n, const MonteCarloOptions& options);

/// Single-object convenience overload.
ErrorEstimate monte_carlo_error(const HypothesisSet& h, const DecisionRegions& regions,
                                std::size_t true_m, std::size_t accepted_l, std::uint64_t n,
                                const MonteCarloOptions& options);

struct ExponentFit {
  /// Least-squares slope of -log alpha against n.
  double slope = 0.0;
  double r_squared = 0.0;
  /// -log alpha / n at the largest n.
  double endpoint_ratio = 0.0;
  std::vector<std::uint64_t> n_grid;
  std::vector<double> log_alpha;
  /// Some alpha on the grid is exactly zero; slope is +inf.
  bool infinite = false;
};

/// Fits the exponent from precomputed log-probabilities (in any base; the
/// slope comes out in the same base). n_grid strictly increasing, >= 3 points.
ExponentFit fit_exponent(std::span<const std::uint64_t> n_grid, std::span<const double> log_alpha);

/// Exact error probabilities on every n of the grid, then fitted.
ExponentFit fit_exponent(const HypothesisSet& h, const DecisionRegions& regions,
                         std::size_t true_m, std::size_t accepted_l,
                         std::span<const std::uint64_t> n_grid);

/// Compound analog built on compound_exact_error.
ExponentFit fit_compound_exponent(const HypothesisSet& h, std::span<const DecisionRegions> per_object,
                                  const HypothesisTuple& truth, const HypothesisTuple& accepted,
                                  std::span<const std::uint64_t> n_grid);

}  // namespace lao
