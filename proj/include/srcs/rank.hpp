#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace srcs {

inline void require_finite(const std::vector<double>& x, const char* what) {
  for (double v : x) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

// Ranks under the indicator-count convention: ranks[j] = #{i : x[i] <= x[j]}.
// Tied observations all receive the count of the last member of their tie
// block, i.e. the maximal shared count. For tie-free input the ranks are a
// permutation of 1..n.
struct rank_vector {
  std::vector<int> ranks;

  std::size_t n() const { return ranks.size(); }
};

inline rank_vector ranks_indicator(const std::vector<double>& x) {
  if (x.empty()) {
    throw std::invalid_argument("ranks_indicator: empty input");
  }
  require_finite(x, "ranks_indicator");

  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&x](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  rank_vector r;
  r.ranks.assign(n, 0);
  std::size_t i = 0;
  while (i < n) {
    // extend over the tie block [i, j]
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) {
      ++j;
    }
    for (std::size_t k = i; k <= j; ++k) {
      r.ranks[order[k]] = static_cast<int>(j + 1);
    }
    i = j + 1;
  }
  return r;
}

// Closed-form Spearman coefficient from indicator-count ranks,
//   rho = 12 * { sum_j R_j Q_j / (n (n^2 - 1)) - (n + 1) / (4 (n - 1)) }.
// Exact for tie-free inputs; with ties the value follows the indicator-count
// convention and differs from mid-rank Spearman.
inline double spearman_rho(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("spearman_rho: length mismatch");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("spearman_rho: need at least two observations");
  }
  const rank_vector rx = ranks_indicator(x);
  const rank_vector ry = ranks_indicator(y);
  const double n = static_cast<double>(x.size());
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    s += static_cast<double>(rx.ranks[j]) * static_cast<double>(ry.ranks[j]);
  }
  return 12.0 * (s / (n * (n * n - 1.0)) - 0.25 * (n + 1.0) / (n - 1.0));
}

}  // namespace srcs
