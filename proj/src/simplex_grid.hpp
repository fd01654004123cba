#pragma once

// Grid walks over the probability simplex shared by the brute-force
// oracle and the complement solver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "lao/probability.hpp"

namespace lao::detail {

/// Visits every point with coordinates k_i / resolution summing to one.
inline void for_each_grid_point(std::size_t dim, std::size_t resolution,
                                const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<std::size_t> counts(dim, 0);
  std::vector<double> point(dim, 0.0);
  const double inv = 1.0 / static_cast<double>(resolution);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
    if (pos + 1 == dim) {
      counts[pos] = left;
      for (std::size_t i = 0; i < dim; ++i) point[i] = static_cast<double>(counts[i]) * inv;
      visit(point);
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      counts[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, resolution);
}

/// Visits points of a box of half-width `radius` around `center` in the
/// first dim-1 coordinates, `per_axis` points per axis; the last coordinate
/// closes the simplex. Points outside the simplex are skipped.
inline void for_each_box_point(const std::vector<double>& center, double radius,
                               std::size_t per_axis,
                               const std::function<void(const std::vector<double>&)>& visit) {
  const std::size_t free = center.size() - 1;
  std::vector<std::size_t> idx(free, 0);
  std::vector<double> point(center.size(), 0.0);
  const double step = 2.0 * radius / static_cast<double>(per_axis - 1);
  while (true) {
    double sum = 0.0;
    bool inside = true;
    for (std::size_t i = 0; i < free; ++i) {
      point[i] = center[i] - radius + step * static_cast<double>(idx[i]);
      if (point[i] < 0.0 || point[i] > 1.0) inside = false;
      sum += point[i];
    }
    point[free] = 1.0 - sum;
    if (inside && point[free] >= 0.0) visit(point);
    std::size_t i = 0;
    while (i < free && ++idx[i] == per_axis) idx[i++] = 0;
    if (i == free) break;
  }
}

/// Builds a Distribution from a grid point, clamping rounding residue.
inline Distribution grid_distribution(std::vector<double> p) {
  double total = 0.0;
  for (double& x : p) {
    x = std::max(x, 0.0);
    total += x;
  }
  for (double& x : p) x /= total;
  return Distribution(std::move(p));
}

/// Resolution whose full simplex grid has at most `budget` points.
inline std::size_t resolution_for_budget(std::size_t dim, std::uint64_t budget) {
  std::size_t n = 1;
  while (type_count(n * 2, dim) <= budget) n *= 2;
  std::size_t lo = n, hi = n * 2;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (type_count(mid, dim) <= budget ? lo : hi) = mid;
  }
  return lo;
}

/// Points per axis for zoom boxes so one box stays near `budget` points.
inline std::size_t box_points_per_axis(std::size_t dim, double budget) {
  const double free = static_cast<double>(dim - 1);
  return std::max<std::size_t>(5, static_cast<std::size_t>(std::pow(budget, 1.0 / free)));
}

}  // namespace lao::detail
