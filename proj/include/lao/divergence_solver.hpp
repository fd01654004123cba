#pragma once

#include <optional>
#include <span>

#include "lao/probability.hpp"

namespace lao {

/// Divergence ball {Q : D(Q||center) <= radius}.
struct BallConstraint {
  Distribution center;
  double radius = 0.0;

  BallConstraint(Distribution c, double r);
  bool contains(const Distribution& q, double log_base = kDefaultLogBase) const;
};

struct ProjectionResult {
  double value = 0.0;
  Distribution argmin;
  /// False iff the target already lies in the ball (value 0, argmin = target).
  bool active = false;
};

/// inf { D(Q||target) : D(Q||ball.center) <= ball.radius }.
///
/// The minimizer lies on the geometric mixture center^a * target^(1-a) / Z,
/// a in [0, 1], where D(Q_a||center) decreases monotonically from
/// D(target||center) to 0; the crossing with the radius is found by
/// bisection on a to 1e-12 in divergence.
///
/// Throws InvalidArgument on alphabet mismatch, NumericalError when the
/// supports of target and center are disjoint or bisection does not settle.
ProjectionResult min_div_in_ball(const Distribution& target, const BallConstraint& ball,
                                 double log_base = kDefaultLogBase);

/// Brute-force reference for min_div_in_ball: scans the simplex grid of the
/// given step (then zooms in around the best feasible point) and returns the
/// smallest D(Q||target) over grid points inside the ball. Never uses the
/// mixture family. Alphabets of size 2 or 3 only; grid_step <= 1e-3.
double min_div_in_ball_oracle(const Distribution& target, const BallConstraint& ball,
                              double grid_step, double log_base = kDefaultLogBase);

struct ComplementResult {
  /// Infimum over the closure of the complement; +inf when region_empty.
  double value = 0.0;
  /// No point of the complement has finite divergence from the target
  /// (in particular, the balls cover the whole simplex).
  bool region_empty = false;
  /// The infimum sits on the boundary of some ball (target was covered).
  bool on_boundary = false;
  std::optional<Distribution> argmin;
};

struct ComplementOptions {
  /// Grid resolution for alphabets of size >= 3; 0 picks a default that
  /// keeps the scan near a million points.
  double grid_step = 0.0;
};

/// inf { D(Q||target) : D(Q||b.center) > b.radius for every ball b }.
///
/// A target without full support confines the search to its face of the
/// simplex, where the divergence is finite.
///
/// Binary alphabets are solved exactly: each ball is an interval of Q(0),
/// and the infimum is attained at an end of the covered component holding
/// the target. Larger alphabets combine a simplex grid scan with the exit
/// points target^b * center^(1-b) / Z, b >= 1, on each covering ball's
/// boundary, followed by local zoom refinement; their accuracy is bounded
/// by the grid resolution.
ComplementResult min_div_in_complement(const Distribution& target,
                                       std::span<const BallConstraint> balls,
                                       double log_base = kDefaultLogBase,
                                       ComplementOptions options = {});

/// inf { D(Q||l_dist) : D(Q||m_dist) <= given_e_ml }: recovers the l-th
/// diagonal exponent from an off-diagonal one.
double inverse_reliability(double given_e_ml, const Distribution& m_dist,
                           const Distribution& l_dist, double log_base = kDefaultLogBase);

/// Normalized a^w * b^(1-w). Symbols where a factor with positive exponent
/// vanishes get zero mass.
Distribution geometric_mixture(const Distribution& a, const Distribution& b, double w);

}  // namespace lao
