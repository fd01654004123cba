#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lao/divergence_solver.hpp"
#include "lao/probability.hpp"

namespace lao {

/// M >= 2 pairwise-distinct hypotheses over one alphabet, plus the log
/// base every exponent is measured in.
class HypothesisSet {
 public:
  explicit HypothesisSet(std::vector<Distribution> dists, double log_base = kDefaultLogBase);

  std::size_t size() const { return dists_.size(); }
  std::size_t alphabet_size() const { return dists_.front().size(); }
  double log_base() const { return log_base_; }
  const Distribution& operator[](std::size_t m) const { return dists_[m]; }
  const std::vector<Distribution>& distributions() const { return dists_; }

  /// D(G_from || G_to), cached.
  double divergence(std::size_t from, std::size_t to) const { return divergence_[from * size() + to]; }

 private:
  std::vector<Distribution> dists_;
  double log_base_;
  std::vector<double> divergence_;
};

/// Prescribed E_{1|1}, ..., E_{M-1|M-1} (0-based: diag[m] for m < M-1).
/// A zero entry selects the Stein construction for that hypothesis.
struct GivenExponents {
  std::vector<double> diag;
};

/// M x M reliabilities E_{m|l}: exponent of accepting l when m is true.
class ReliabilityMatrix {
 public:
  explicit ReliabilityMatrix(std::size_t hypotheses);

  std::size_t size() const { return size_; }
  double operator()(std::size_t m, std::size_t l) const { return entries_[m * size_ + l]; }
  double& operator()(std::size_t m, std::size_t l) { return entries_[m * size_ + l]; }

  /// min over l != m of E_{m|l}.
  double row_min_off_diagonal(std::size_t m) const;
  /// Every diagonal entry equals its row's off-diagonal minimum within tol.
  bool satisfies_diagonal_rule(double tol) const;
  bool has_zero_entry() const;

 private:
  std::size_t size_;
  std::vector<double> entries_;
};

/// Ball partition of the simplex: hypothesis l < M-1 owns its ball, the
/// last hypothesis owns whatever no ball covers.
struct DecisionRegions {
  std::vector<BallConstraint> balls;
  double log_base = kDefaultLogBase;

  std::size_t hypotheses() const { return balls.size() + 1; }
};

enum class BoundKind { kPositivity, kUpperBound };

/// What caps E_{m|m} from above.
enum class LimitKind {
  kNone,
  /// D(G_other || G_m) for a later hypothesis.
  kDivergence,
  /// E*_{m|other}(E_{other|other}) for an earlier hypothesis.
  kReliability,
};

struct Violation {
  std::size_t index = 0;
  BoundKind kind = BoundKind::kPositivity;
  double value = 0.0;
  double bound = 0.0;
  LimitKind limit = LimitKind::kNone;
  std::size_t limiting_hypothesis = 0;
};

struct ConditionReport {
  bool ok = true;
  std::vector<Violation> violations;
  /// Strict upper bound for each prescribed diagonal entry.
  std::vector<double> upper_bounds;

  bool only_positivity_violations() const;
};

/// Checks the existence conditions for an LAO test with all-positive
/// reliabilities. Entries are examined in increasing m; the bound for m uses
/// the reliabilities induced by the earlier prescribed entries, and every
/// violation is reported (equality counts as a violation).
ConditionReport check_conditions(const HypothesisSet& h, const GivenExponents& given);

struct BuildOptions {
  /// Build even when the conditions fail; the diagonal is then taken from
  /// the row minima of the test actually constructed.
  bool force = false;
};

/// Reliability matrix of the LAO test for the prescribed diagonal.
///
/// Off-diagonal entries of column l < M-1 are divergence-ball projections,
/// column M-1 comes from the complement of all balls, and E_{M|M} is the
/// minimum of the last row. Zero prescribed entries are allowed (Stein
/// columns); any other violated condition throws ConditionViolation unless
/// options.force is set.
ReliabilityMatrix build_matrix(const HypothesisSet& h, const GivenExponents& given,
                               BuildOptions options = {});

/// D(G_m || G_l) for every l != m, in increasing l: the reliabilities that
/// follow from prescribing E_{m|m} = 0.
std::vector<double> stein_row(const HypothesisSet& h, std::size_t m);

DecisionRegions make_regions(const HypothesisSet& h, const GivenExponents& given);

/// First l < M-1 whose ball holds q, else M-1.
std::size_t classify_type(const DecisionRegions& regions, const Distribution& q);

/// Decision of the test for a sample: classifies its empirical type.
std::size_t classify(const DecisionRegions& regions, std::span<const std::size_t> sample);

/// inf over ball(G_l, radius) of D(Q||G_m); +inf when no point of the ball
/// is absolutely continuous w.r.t. G_m.
double ball_reliability(const HypothesisSet& h, std::size_t m, std::size_t l, double radius);

}  // namespace lao
