#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "srcs/rank.hpp"

namespace srcs {

// Right-continuous piecewise-constant function (empirical CDFs, product-limit
// curves). Evaluation returns left_value for x < jump_points.front(), else the
// value attached to the largest jump point <= x.
struct step_function {
  std::vector<double> jump_points;  // strictly increasing
  std::vector<double> values;       // values[i] holds on [jump_points[i], jump_points[i+1])
  double left_value = 0.0;

  double operator()(double x) const {
    auto it = std::upper_bound(jump_points.begin(), jump_points.end(), x);
    if (it == jump_points.begin()) {
      return left_value;
    }
    return values[static_cast<std::size_t>(it - jump_points.begin()) - 1];
  }

  // Left limit f(x-), the value attained just below x.
  double left_limit(double x) const {
    auto it = std::lower_bound(jump_points.begin(), jump_points.end(), x);
    if (it == jump_points.begin()) {
      return left_value;
    }
    return values[static_cast<std::size_t>(it - jump_points.begin()) - 1];
  }

  std::size_t size() const { return jump_points.size(); }
};

// Empirical CDF with jumps at the distinct sample values. Satisfies
// n * ecdf(x)(x[j]) == ranks_indicator(x).ranks[j] for every j.
inline step_function ecdf(const std::vector<double>& x) {
  if (x.empty()) {
    throw std::invalid_argument("ecdf: empty input");
  }
  require_finite(x, "ecdf");

  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  step_function f;
  f.left_value = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) {
      ++j;
    }
    f.jump_points.push_back(sorted[i]);
    f.values.push_back(static_cast<double>(j + 1) / n);
    i = j + 1;
  }
  return f;
}

}  // namespace srcs
