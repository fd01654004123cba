#include <cmath>
#include <optional>
#include <vector>

#include "lao/divergence_solver.hpp"
#include "lao/errors.hpp"
#include "simplex_grid.hpp"

namespace lao {

double min_div_in_ball_oracle(const Distribution& target, const BallConstraint& ball,
                              double grid_step, double log_base) {
  const std::size_t dim = target.size();
  if (dim != ball.center.size()) throw InvalidArgument("alphabet size mismatch");
  if (dim != 2 && dim != 3) throw InvalidArgument("grid oracle supports alphabets of size 2 or 3");
  if (!(grid_step > 0.0) || grid_step > 1e-3) {
    throw InvalidArgument("grid oracle needs 0 < grid_step <= 1e-3");
  }

  std::optional<std::vector<double>> best;
  double best_value = kInfinity;
  const auto consider = [&](const std::vector<double>& p) {
    const Distribution q = detail::grid_distribution(p);
    if (kl_divergence(q, ball.center, log_base) > ball.radius) return;
    const double value = kl_divergence(q, target, log_base);
    if (!best || value < best_value) {
      best_value = value;
      best = p;
    }
  };

  // The center is always feasible, so a ball thinner than the grid still
  // yields a value.
  consider(std::vector<double>(ball.center.probs().begin(), ball.center.probs().end()));
  const auto resolution = static_cast<std::size_t>(std::llround(1.0 / grid_step));
  detail::for_each_grid_point(dim, resolution, consider);

  const std::size_t per_axis = dim == 2 ? 401 : 201;
  double half_width = 2.0 * grid_step;
  for (int level = 0; level < 3; ++level) {
    const std::vector<double> center = *best;
    detail::for_each_box_point(center, half_width, per_axis, consider);
    half_width *= 4.0 / static_cast<double>(per_axis - 1);
  }
  return best_value;
}

}  // namespace lao
