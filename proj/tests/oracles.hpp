#pragma once

// Brute-force reference implementations, used only by tests. Each one follows
// the defining formula as literally as possible so the optimized library code
// has an independent target to match.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "srcs/data_matrix.hpp"
#include "srcs/survival.hpp"

namespace oracle {

inline std::vector<int> ranks_by_count(const std::vector<double>& x) {
  std::vector<int> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    int count = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] <= x[j]) ++count;
    }
    out[j] = count;
  }
  return out;
}

// (1/n^3) sum_j [#(x_i <= x_j)] [#(y_i <= y_j)] - 1/4, loops written out
inline double score_triple_loop(const std::vector<double>& x,
                                const std::vector<double>& y) {
  const std::size_t n = x.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    int r = 0, q = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] <= x[j]) ++r;
      if (y[i] <= y[j]) ++q;
    }
    acc += static_cast<double>(r) * static_cast<double>(q);
  }
  const double nd = static_cast<double>(n);
  return acc / (nd * nd * nd) - 0.25;
}

// same statistic through empirical CDFs: (1/n) sum_j Fx(x_j) Fy(y_j) - 1/4
inline double score_double_ecdf(const std::vector<double>& x,
                                const std::vector<double>& y) {
  const srcs::step_function fx = srcs::ecdf(x);
  const srcs::step_function fy = srcs::ecdf(y);
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    acc += fx(x[j]) * fy(y[j]);
  }
  return acc / static_cast<double>(x.size()) - 0.25;
}

// censored-score display form: (1/n) sum_i Fx(x_i) * imputed_i - 1/4
inline double censored_score_literal(const std::vector<double>& x,
                                     const srcs::survival_response& resp) {
  const srcs::step_function fx = srcs::ecdf(x);
  const srcs::imputed_distribution imp = srcs::impute_distribution(resp);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += fx(x[i]) * imp.values[i];
  }
  return acc / static_cast<double>(x.size()) - 0.25;
}

// test-data helpers, deliberately independent of the library's generator
inline std::vector<double> random_vector(std::mt19937_64& gen, std::size_t n,
                                         bool with_ties = false) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> out(n);
  for (double& v : out) {
    v = dist(gen);
    if (with_ties) v = std::round(v * 4.0) / 4.0;
  }
  return out;
}

inline srcs::data_matrix random_matrix(std::mt19937_64& gen, std::size_t n,
                                       std::size_t p, bool with_ties = false) {
  std::vector<std::vector<double>> cols;
  cols.reserve(p);
  for (std::size_t k = 0; k < p; ++k) {
    cols.push_back(random_vector(gen, n, with_ties));
  }
  return srcs::make_data_matrix(std::move(cols));
}

inline srcs::survival_response random_censored(std::mt19937_64& gen,
                                               std::size_t n,
                                               double censor_rate) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::bernoulli_distribution cens(censor_rate);
  std::vector<double> times(n);
  std::vector<int> events(n);
  for (std::size_t i = 0; i < n; ++i) {
    times[i] = dist(gen);
    events[i] = cens(gen) ? 0 : 1;
  }
  if (n > 0) events[n - 1] = 1;  // keep at least one event
  return srcs::make_survival_response(std::move(times), std::move(events));
}

}  // namespace oracle
