#include "lao/simulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "lao/errors.hpp"

namespace lao {

namespace {

void require_index(std::size_t m, std::size_t count) {
  if (m >= count) throw InvalidArgument("hypothesis index out of range");
}

// Natural-log probability that the test outputs a decision satisfying
// `keep` when n samples come from g.
template <typename Keep>
double log_probability_of_decisions(const DecisionRegions& regions, const Distribution& g,
                                    std::uint64_t n, Keep keep) {
  if (n == 0) throw InvalidArgument("sample length must be positive");
  if (type_count(n, g.size()) > kMaxExactTypes) {
    throw NumericalError("exact enumeration would visit more than " +
                         std::to_string(kMaxExactTypes) + " types");
  }
  std::vector<double> terms;
  for (const auto& t : enumerate_types(n, g.size())) {
    if (!keep(classify_type(regions, t.distribution()))) continue;
    const double lp = type_class_log_probability(t, g, std::exp(1.0));
    if (lp != -kInfinity) terms.push_back(lp);
  }
  return log_sum_exp(terms);
}

ErrorEstimate exact_estimate(double log_natural, std::uint64_t n, double log_base) {
  ErrorEstimate e;
  e.n = n;
  e.method = Method::kExact;
  e.alpha = std::min(1.0, std::exp(log_natural));
  e.log_alpha = log_natural == -kInfinity ? -kInfinity : std::min(0.0, log_natural) / std::log(log_base);
  return e;
}

// Uniform double in [0, 1) from the top 53 bits.
double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::mt19937_64 trial_generator(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

ErrorEstimate exact_error(const HypothesisSet& h, const DecisionRegions& regions,
                          std::size_t true_m, std::size_t accepted_l, std::uint64_t n,
                          Event event) {
  require_index(true_m, h.size());
  require_index(accepted_l, h.size());
  if (regions.hypotheses() != h.size()) throw InvalidArgument("regions do not match hypotheses");
  double log_natural = 0.0;
  if (event == Event::kRejection) {
    if (accepted_l != true_m) throw InvalidArgument("rejection probability needs accepted == true");
    log_natural = log_probability_of_decisions(regions, h[true_m], n,
                                               [&](std::size_t d) { return d != true_m; });
  } else {
    log_natural = log_probability_of_decisions(regions, h[true_m], n,
                                               [&](std::size_t d) { return d == accepted_l; });
  }
  return exact_estimate(log_natural, n, h.log_base());
}

ErrorEstimate compound_exact_error(const HypothesisSet& h,
                                   std::span<const DecisionRegions> per_object,
                                   const HypothesisTuple& truth, const HypothesisTuple& accepted,
                                   std::uint64_t n, Event event) {
  if (truth.size() != per_object.size() || accepted.size() != per_object.size()) {
    throw InvalidArgument("tuple length does not match the number of objects");
  }
  const double ln_base = std::log(h.log_base());
  if (event == Event::kRejection) {
    if (truth != accepted) throw InvalidArgument("rejection probability needs accepted == true");
    // 1 - prod(1 - r_i) from the per-object rejection probabilities r_i.
    std::vector<double> log_r;
    double sum_r = 0.0;
    double log_keep = 0.0;
    for (std::size_t i = 0; i < per_object.size(); ++i) {
      const ErrorEstimate r = exact_error(h, per_object[i], truth[i], truth[i], n, Event::kRejection);
      if (r.exact_zero()) continue;
      log_r.push_back(r.log_alpha * ln_base);
      sum_r += r.alpha;
      log_keep += std::log1p(-r.alpha);
    }
    const double log_natural =
        sum_r > 1e-8 ? std::log(-std::expm1(log_keep)) : log_sum_exp(log_r);
    return exact_estimate(log_natural, n, h.log_base());
  }
  double log_natural = 0.0;
  for (std::size_t i = 0; i < per_object.size(); ++i) {
    const ErrorEstimate part = exact_error(h, per_object[i], truth[i], accepted[i], n);
    if (part.exact_zero()) {
      log_natural = -kInfinity;
      break;
    }
    log_natural += part.log_alpha * ln_base;
  }
  return exact_estimate(log_natural, n, h.log_base());
}

ErrorEstimate monte_carlo_error(const HypothesisSet& h, std::span<const DecisionRegions> per_object,
                                const HypothesisTuple& truth, const HypothesisTuple& accepted,
                                std::uint64_t n, const MonteCarloOptions& options) {
  const std::size_t k = per_object.size();
  if (truth.size() != k || accepted.size() != k || k == 0) {
    throw InvalidArgument("tuple length does not match the number of objects");
  }
  for (std::size_t i = 0; i < k; ++i) {
    require_index(truth[i], h.size());
    require_index(accepted[i], h.size());
  }
  if (n == 0) throw InvalidArgument("sample length must be positive");
  if (options.trials == 0) throw InvalidArgument("need at least one trial");

  const std::size_t alphabet = h.alphabet_size();
  std::vector<std::vector<double>> cdfs(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& g = h[truth[i]];
    double acc = 0.0;
    for (std::size_t a = 0; a < alphabet; ++a) cdfs[i].push_back(acc += g[a]);
    cdfs[i].back() = 1.0;
  }

  const auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    std::vector<std::uint64_t> counts(alphabet);
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      auto rng = trial_generator(options.seed, trial);
      bool hit = true;
      for (std::size_t i = 0; i < k; ++i) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::uint64_t s = 0; s < n; ++s) {
          const double u = unit_interval(rng);
          const auto it = std::upper_bound(cdfs[i].begin(), cdfs[i].end(), u);
          ++counts[std::min<std::size_t>(it - cdfs[i].begin(), alphabet - 1)];
        }
        const EmpiricalType t{counts, n};
        // Every object draws its samples so trial streams stay aligned.
        hit = hit && classify_type(per_object[i], t.distribution()) == accepted[i];
      }
      hits += hit ? 1 : 0;
    }
    return hits;
  };

  const unsigned threads = std::max(1u, options.threads);
  std::uint64_t hits = 0;
  if (threads == 1) {
    hits = run_range(0, options.trials);
  } else {
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (options.trials + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint64_t begin = std::min<std::uint64_t>(options.trials, w * chunk);
      const std::uint64_t end = std::min<std::uint64_t>(options.trials, begin + chunk);
      pool.emplace_back([&, w, begin, end] { partial[w] = run_range(begin, end); });
    }
    for (auto& t : pool) t.join();
    for (auto p : partial) hits += p;
  }

  ErrorEstimate e;
  e.n = n;
  e.method = Method::kMonteCarlo;
  e.trials = options.trials;
  e.seed = options.seed;
  e.hits = hits;
  e.alpha = static_cast<double>(hits) / static_cast<double>(options.trials);
  e.log_alpha = hits == 0 ? -kInfinity : std::log(e.alpha) / std::log(h.log_base());
  return e;
}

ErrorEstimate monte_carlo_error(const HypothesisSet& h, const DecisionRegions& regions,
                                std::size_t true_m, std::size_t accepted_l, std::uint64_t n,
                                const MonteCarloOptions& options) {
  const std::array<DecisionRegions, 1> one{regions};
  return monte_carlo_error(h, one, {true_m}, {accepted_l}, n, options);
}

ExponentFit fit_exponent(std::span<const std::uint64_t> n_grid, std::span<const double> log_alpha) {
  if (n_grid.size() != log_alpha.size()) throw InvalidArgument("grid and values differ in length");
  if (n_grid.size() < 3) throw InvalidArgument("exponent fit needs at least three lengths");
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) throw InvalidArgument("length grid must be strictly increasing");
  }
  ExponentFit fit;
  fit.n_grid.assign(n_grid.begin(), n_grid.end());
  fit.log_alpha.assign(log_alpha.begin(), log_alpha.end());
  if (std::any_of(log_alpha.begin(), log_alpha.end(), [](double v) { return v == -kInfinity; })) {
    fit.infinite = true;
    fit.slope = kInfinity;
    fit.endpoint_ratio = kInfinity;
    return fit;
  }

  const double count = static_cast<double>(n_grid.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    mean_x += static_cast<double>(n_grid[i]);
    mean_y += -log_alpha[i];
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const double dx = static_cast<double>(n_grid[i]) - mean_x;
    const double dy = -log_alpha[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.slope = sxy / sxx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.endpoint_ratio = -log_alpha.back() / static_cast<double>(n_grid.back());
  return fit;
}

ExponentFit fit_exponent(const HypothesisSet& h, const DecisionRegions& regions,
                         std::size_t true_m, std::size_t accepted_l,
                         std::span<const std::uint64_t> n_grid) {
  std::vector<double> logs;
  for (auto n : n_grid) logs.push_back(exact_error(h, regions, true_m, accepted_l, n).log_alpha);
  return fit_exponent(n_grid, logs);
}

ExponentFit fit_compound_exponent(const HypothesisSet& h, std::span<const DecisionRegions> per_object,
                                  const HypothesisTuple& truth, const HypothesisTuple& accepted,
                                  std::span<const std::uint64_t> n_grid) {
  std::vector<double> logs;
  for (auto n : n_grid) {
    logs.push_back(compound_exact_error(h, per_object, truth, accepted, n).log_alpha);
  }
  return fit_exponent(n_grid, logs);
}

}  // namespace lao
