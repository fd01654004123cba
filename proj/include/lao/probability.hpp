#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace lao {

inline constexpr double kDefaultLogBase = 2.0;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Probability vector on the alphabet {0, ..., size()-1}.
///
/// Inputs whose mass lies within 1e-9 of one are renormalized; anything
/// else (negative or non-finite entries, fewer than two symbols, mass far
/// from one) is rejected with InvalidArgument.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t symbol) const { return probs_[symbol]; }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> probs_;
};

/// Symbol counts of a sample of length n.
struct EmpiricalType {
  std::vector<std::uint64_t> counts;
  std::uint64_t n = 0;

  std::size_t alphabet_size() const { return counts.size(); }
  Distribution distribution() const;
};

/// Kullback-Leibler divergence D(q||g) in the given log base, with
/// 0 log(0/g) = 0 and q log(q/0) = +inf for q > 0.
double kl_divergence(const Distribution& q, const Distribution& g,
                     double log_base = kDefaultLogBase);

EmpiricalType empirical_type(std::span<const std::size_t> sample,
                             std::size_t alphabet_size);

/// All compositions of n into alphabet_size parts, in lexicographic order
/// of the count vectors.
std::vector<EmpiricalType> enumerate_types(std::uint64_t n,
                                           std::size_t alphabet_size);

/// Number of compositions enumerate_types would produce; saturates at
/// UINT64_MAX.
std::uint64_t type_count(std::uint64_t n, std::size_t alphabet_size);

/// log G^n(T), the exact mass of the type class of t under the product
/// measure, in the given log base. Returns -inf when t puts mass on a
/// symbol g does not support.
double type_class_log_probability(const EmpiricalType& t, const Distribution& g,
                                  double log_base = kDefaultLogBase);

/// log(sum exp(x_i)) over natural-log inputs; -inf for an empty or all -inf
/// input.
double log_sum_exp(std::span<const double> xs);

}  // namespace lao
