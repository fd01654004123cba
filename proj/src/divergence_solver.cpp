#include "lao/divergence_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lao/errors.hpp"
#include "simplex_grid.hpp"

namespace lao {

namespace {

constexpr double kConstraintTolerance = 1e-12;
constexpr double kParameterWidth = 1e-15;
constexpr int kMaxBisections = 200;

void require_same_alphabet(const Distribution& a, const Distribution& b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("alphabet size mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
}

bool supports_overlap(const Distribution& a, const Distribution& b) {
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[x] > 0.0 && b[x] > 0.0) return true;
  }
  return false;
}

Distribution binary_point(double q) { return Distribution({q, 1.0 - q}); }

// Solves D(path(s)||center) = radius for s in [inside, outside], where the
// divergence is <= radius at `inside` and > radius at `outside`. Returns the
// parameter on the feasible side.
template <typename Path>
double bisect_on_path(const Path& path, const Distribution& center, double radius,
                      double inside, double outside, double log_base) {
  for (int iter = 0; iter < kMaxBisections; ++iter) {
    if (std::abs(outside - inside) <= kParameterWidth) return inside;
    const double mid = 0.5 * (inside + outside);
    const double d = kl_divergence(path(mid), center, log_base);
    if (std::abs(d - radius) <= kConstraintTolerance) return mid;
    (d > radius ? outside : inside) = mid;
  }
  throw NumericalError("bisection on a divergence-ball boundary did not converge");
}

struct Interval {
  double lo;
  double hi;
};

// The ball around a binary center is an interval of Q(0), since D(Q||c) is
// convex in Q(0) and vanishes at c(0).
Interval binary_ball_interval(const BallConstraint& ball, double log_base) {
  const double c0 = ball.center[0];
  if (ball.radius == 0.0) return {c0, c0};
  const auto path = [](double q) { return binary_point(q); };
  Interval iv{0.0, 1.0};
  if (kl_divergence(binary_point(0.0), ball.center, log_base) > ball.radius) {
    iv.lo = bisect_on_path(path, ball.center, ball.radius, c0, 0.0, log_base);
  }
  if (kl_divergence(binary_point(1.0), ball.center, log_base) > ball.radius) {
    iv.hi = bisect_on_path(path, ball.center, ball.radius, c0, 1.0, log_base);
  }
  return iv;
}

ComplementResult binary_complement(const Distribution& target,
                                   std::span<const BallConstraint> balls, double log_base) {
  std::vector<Interval> ivs;
  ivs.reserve(balls.size());
  for (const auto& b : balls) ivs.push_back(binary_ball_interval(b, log_base));
  std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const auto& iv : ivs) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }

  const double t0 = target[0];
  const auto covering = std::find_if(merged.begin(), merged.end(), [&](const Interval& iv) {
    return iv.lo <= t0 && t0 <= iv.hi;
  });
  if (covering == merged.end()) return {0.0, false, false, target};

  ComplementResult result{kInfinity, true, true, std::nullopt};
  for (double edge : {covering->lo, covering->hi}) {
    if (edge <= 0.0 || edge >= 1.0) continue;
    result.region_empty = false;
    const Distribution q = binary_point(edge);
    const double value = kl_divergence(q, target, log_base);
    if (!result.argmin || value < result.value) {
      result.value = value;
      result.argmin = q;
    }
  }
  if (result.region_empty) result.on_boundary = false;
  return result;
}

bool in_closed_complement(const Distribution& q, std::span<const BallConstraint> balls,
                          double log_base) {
  for (const auto& b : balls) {
    if (kl_divergence(q, b.center, log_base) < b.radius - kConstraintTolerance) return false;
  }
  return true;
}

ComplementResult grid_complement(const Distribution& target,
                                 std::span<const BallConstraint> balls, double log_base,
                                 const ComplementOptions& options) {
  const std::size_t dim = target.size();
  ComplementResult result{kInfinity, true, true, std::nullopt};
  const auto offer = [&](const Distribution& q) {
    if (!in_closed_complement(q, balls, log_base)) return;
    result.region_empty = false;
    const double value = kl_divergence(q, target, log_base);
    if (!result.argmin || value < result.value) {
      result.value = value;
      result.argmin = q;
    }
  };

  // Exit points: stationary points of D(.||target) on each covering sphere.
  for (const auto& b : balls) {
    if (b.radius == 0.0 || !b.contains(target, log_base)) continue;
    const auto path = [&](double beta) { return geometric_mixture(target, b.center, beta); };
    double outside = 2.0;
    while (outside < 1e6 && kl_divergence(path(outside), b.center, log_base) <= b.radius) {
      outside *= 2.0;
    }
    if (kl_divergence(path(outside), b.center, log_base) <= b.radius) continue;
    const double beta = bisect_on_path(path, b.center, b.radius, 1.0, outside, log_base);
    offer(path(beta));
  }

  std::size_t resolution = options.grid_step > 0.0
                               ? static_cast<std::size_t>(std::llround(1.0 / options.grid_step))
                               : detail::resolution_for_budget(dim, 1'000'000);
  resolution = std::max<std::size_t>(resolution, 1);
  std::optional<Distribution> best_grid;
  double best_grid_value = kInfinity;
  detail::for_each_grid_point(dim, resolution, [&](const std::vector<double>& p) {
    const Distribution q = detail::grid_distribution(p);
    if (!in_closed_complement(q, balls, log_base)) return;
    const double value = kl_divergence(q, target, log_base);
    if (!best_grid || value < best_grid_value) {
      best_grid_value = value;
      best_grid = q;
    }
  });
  if (best_grid) {
    offer(*best_grid);
    double half_width = 2.0 / static_cast<double>(resolution);
    const std::size_t per_axis = detail::box_points_per_axis(dim, 40'000);
    for (int level = 0; level < 4; ++level) {
      const std::vector<double> center(result.argmin->probs().begin(), result.argmin->probs().end());
      detail::for_each_box_point(center, half_width, per_axis, [&](const std::vector<double>& p) {
        offer(detail::grid_distribution(p));
      });
      half_width *= 4.0 / static_cast<double>(per_axis - 1);
    }
  }
  if (result.region_empty) result.on_boundary = false;
  return result;
}

// Off the target's support D(.||target) is infinite, so only the face of the
// simplex spanned by that support matters. On the face D(Q||c) equals
// D(Q||c') - log c(face) with c' the center conditioned on the face, which
// turns every ball into a ball of the smaller simplex.
ComplementResult face_complement(const Distribution& target, const std::vector<std::size_t>& face,
                                 std::span<const BallConstraint> balls, double log_base,
                                 const ComplementOptions& options) {
  if (face.size() == 1) {
    const bool covered = std::any_of(balls.begin(), balls.end(),
                                     [&](const BallConstraint& b) { return b.contains(target, log_base); });
    if (covered) return {kInfinity, true, false, std::nullopt};
    return {0.0, false, false, target};
  }
  const auto restrict = [&](const Distribution& d) {
    std::vector<double> out;
    for (std::size_t x : face) out.push_back(d[x]);
    return out;
  };
  std::vector<BallConstraint> reduced;
  for (const auto& b : balls) {
    std::vector<double> c = restrict(b.center);
    double mass = 0.0;
    for (double p : c) mass += p;
    if (mass == 0.0) continue;
    const double radius = b.radius + std::log(mass) / std::log(log_base);
    if (radius < 0.0) continue;
    for (double& p : c) p /= mass;
    reduced.emplace_back(Distribution(std::move(c)), radius);
  }
  const Distribution reduced_target(restrict(target));
  if (reduced.empty()) return {0.0, false, false, target};

  ComplementResult result = min_div_in_complement(reduced_target, reduced, log_base, options);
  if (result.argmin) {
    std::vector<double> full(target.size(), 0.0);
    for (std::size_t i = 0; i < face.size(); ++i) full[face[i]] = (*result.argmin)[i];
    result.argmin = Distribution(std::move(full));
  }
  return result;
}

}  // namespace

BallConstraint::BallConstraint(Distribution c, double r) : center(std::move(c)), radius(r) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("ball radius must be finite and nonnegative");
  }
}

bool BallConstraint::contains(const Distribution& q, double log_base) const {
  return kl_divergence(q, center, log_base) <= radius;
}

Distribution geometric_mixture(const Distribution& a, const Distribution& b, double w) {
  require_same_alphabet(a, b);
  if (w == 1.0) return a;
  if (w == 0.0) return b;
  std::vector<double> logs(a.size(), -kInfinity);
  double hi = -kInfinity;
  for (std::size_t x = 0; x < a.size(); ++x) {
    const bool a_zero = a[x] == 0.0;
    const bool b_zero = b[x] == 0.0;
    if ((a_zero && w > 0.0) || (b_zero && w < 1.0)) continue;
    logs[x] = (a_zero ? 0.0 : w * std::log(a[x])) + (b_zero ? 0.0 : (1.0 - w) * std::log(b[x]));
    hi = std::max(hi, logs[x]);
  }
  if (hi == -kInfinity) throw NumericalError("geometric mixture of disjoint supports");
  std::vector<double> probs(a.size());
  double total = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    probs[x] = std::exp(logs[x] - hi);
    total += probs[x];
  }
  for (double& p : probs) p /= total;
  return Distribution(std::move(probs));
}

ProjectionResult min_div_in_ball(const Distribution& target, const BallConstraint& ball,
                                 double log_base) {
  require_same_alphabet(target, ball.center);
  if (kl_divergence(target, ball.center, log_base) <= ball.radius) {
    return {0.0, target, false};
  }
  if (!supports_overlap(target, ball.center)) {
    throw NumericalError("infeasible geometry: target and ball center have disjoint supports");
  }
  if (ball.radius == 0.0) {
    return {kl_divergence(ball.center, target, log_base), ball.center, true};
  }
  // a = 1 is the center (divergence 0), a = 0 the target (outside the ball).
  const auto path = [&](double a) { return geometric_mixture(ball.center, target, a); };
  const double a = bisect_on_path(path, ball.center, ball.radius, 1.0, 0.0, log_base);
  Distribution q = path(a);
  const double value = kl_divergence(q, target, log_base);
  return {value, std::move(q), true};
}

ComplementResult min_div_in_complement(const Distribution& target,
                                       std::span<const BallConstraint> balls, double log_base,
                                       ComplementOptions options) {
  if (balls.empty()) throw InvalidArgument("complement needs at least one ball");
  for (const auto& b : balls) require_same_alphabet(target, b.center);

  std::vector<std::size_t> face;
  for (std::size_t x = 0; x < target.size(); ++x) {
    if (target[x] > 0.0) face.push_back(x);
  }
  if (face.size() < target.size()) return face_complement(target, face, balls, log_base, options);

  // A zero-radius ball removes a single point, which leaves the closure of
  // the complement unchanged.
  std::vector<BallConstraint> solid;
  for (const auto& b : balls) {
    if (b.radius > 0.0) solid.push_back(b);
  }
  const bool covered = std::any_of(solid.begin(), solid.end(),
                                   [&](const BallConstraint& b) { return b.contains(target, log_base); });
  if (!covered) return {0.0, false, false, target};
  if (target.size() == 2) return binary_complement(target, solid, log_base);
  return grid_complement(target, solid, log_base, options);
}

double inverse_reliability(double given_e_ml, const Distribution& m_dist,
                           const Distribution& l_dist, double log_base) {
  if (!(given_e_ml >= 0.0)) throw InvalidArgument("reliability must be nonnegative");
  return min_div_in_ball(l_dist, BallConstraint(m_dist, given_e_ml), log_base).value;
}

}  // namespace lao
