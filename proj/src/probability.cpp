#include "lao/probability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lao/errors.hpp"

namespace lao {

namespace {

constexpr double kNormalizationSlack = 1e-9;

void require_same_alphabet(std::size_t a, std::size_t b) {
  if (a != b) {
    throw InvalidArgument("alphabet size mismatch: " + std::to_string(a) + " vs " +
                          std::to_string(b));
  }
}

void require_log_base(double base) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw InvalidArgument("log base must be a finite number > 1");
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw InvalidArgument("distribution needs an alphabet of at least two symbols");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw InvalidArgument("distribution entries must be finite and nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationSlack) {
    throw InvalidArgument("distribution mass " + std::to_string(total) +
                          " is not within 1e-9 of 1");
  }
  for (double& p : probs_) p /= total;
}

Distribution EmpiricalType::distribution() const {
  if (n == 0) throw InvalidArgument("empty type has no distribution");
  std::vector<double> probs(counts.size());
  for (std::size_t a = 0; a < counts.size(); ++a) {
    probs[a] = static_cast<double>(counts[a]) / static_cast<double>(n);
  }
  return Distribution(std::move(probs));
}

double kl_divergence(const Distribution& q, const Distribution& g, double log_base) {
  require_same_alphabet(q.size(), g.size());
  require_log_base(log_base);
  double sum = 0.0;
  for (std::size_t a = 0; a < q.size(); ++a) {
    if (q[a] == 0.0) continue;
    if (g[a] == 0.0) return kInfinity;
    sum += q[a] * std::log(q[a] / g[a]);
  }
  // Rounding can leave a tiny negative residue when q == g.
  return std::max(sum, 0.0) / std::log(log_base);
}

EmpiricalType empirical_type(std::span<const std::size_t> sample,
                             std::size_t alphabet_size) {
  if (sample.empty()) throw InvalidArgument("empty sample");
  if (alphabet_size < 2) throw InvalidArgument("alphabet size must be at least 2");
  EmpiricalType t{std::vector<std::uint64_t>(alphabet_size, 0), sample.size()};
  for (std::size_t x : sample) {
    if (x >= alphabet_size) {
      throw InvalidArgument("symbol " + std::to_string(x) + " out of range for alphabet of size " +
                            std::to_string(alphabet_size));
    }
    ++t.counts[x];
  }
  return t;
}

std::uint64_t type_count(std::uint64_t n, std::size_t alphabet_size) {
  // C(n + k - 1, k - 1), computed incrementally; every prefix is itself a
  // binomial coefficient so the division is exact.
  const std::uint64_t k = alphabet_size - 1;
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<EmpiricalType> enumerate_types(std::uint64_t n, std::size_t alphabet_size) {
  if (n < 1) throw InvalidArgument("type length must be at least 1");
  if (alphabet_size < 2) throw InvalidArgument("alphabet size must be at least 2");

  std::vector<EmpiricalType> out;
  out.reserve(type_count(n, alphabet_size));
  std::vector<std::uint64_t> counts(alphabet_size, 0);
  counts.back() = n;
  // Lexicographic successor over compositions: (0,..,0,n) first, (n,0,..,0) last.
  while (true) {
    out.push_back(EmpiricalType{counts, n});
    // Lexicographic successor: bump the slot left of the rightmost nonzero
    // count and park the remaining mass in the last slot.
    std::size_t j = alphabet_size - 1;
    while (j > 0 && counts[j] == 0) --j;
    if (j == 0) break;
    const std::uint64_t tail = counts[j];
    counts[j] = 0;
    ++counts[j - 1];
    counts.back() = tail - 1;
  }
  return out;
}

double type_class_log_probability(const EmpiricalType& t, const Distribution& g,
                                  double log_base) {
  require_same_alphabet(t.alphabet_size(), g.size());
  require_log_base(log_base);
  double log_p = std::lgamma(static_cast<double>(t.n) + 1.0);
  for (std::size_t a = 0; a < t.counts.size(); ++a) {
    if (t.counts[a] == 0) continue;
    if (g[a] == 0.0) return -kInfinity;
    const double c = static_cast<double>(t.counts[a]);
    log_p += c * std::log(g[a]) - std::lgamma(c + 1.0);
  }
  return log_p / std::log(log_base);
}

double log_sum_exp(std::span<const double> xs) {
  double hi = -kInfinity;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == -kInfinity) return -kInfinity;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

}  // namespace lao
