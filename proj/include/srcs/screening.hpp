#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "srcs/data_matrix.hpp"
#include "srcs/parallel.hpp"
#include "srcs/rank.hpp"
#include "srcs/survival.hpp"

namespace srcs {

enum class screen_method { srcs, srcs_cen, pearson_sis };

inline const char* method_name(screen_method m) {
  switch (m) {
    case screen_method::srcs: return "srcs";
    case screen_method::srcs_cen: return "srcs_cen";
    case screen_method::pearson_sis: return "pearson";
  }
  return "?";
}

// Marginal utilities for every feature plus the induced ranking
// (|score| descending, ties broken by ascending feature index).
// d_n and selected stay empty until select_top fills them.
struct screening_scores {
  screen_method method = screen_method::srcs;
  std::size_t n = 0;
  std::vector<double> scores;
  std::vector<std::size_t> ranking;
  std::size_t d_n = 0;
  std::vector<std::size_t> selected;
  std::size_t capped_weights = 0;
};

namespace detail {

inline std::vector<std::size_t> rank_features(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&scores](std::size_t a, std::size_t b) {
    const double sa = std::fabs(scores[a]), sb = std::fabs(scores[b]);
    if (sa != sb) return sa > sb;
    return a < b;
  });
  return order;
}

// Shared kernel for the rank-based utilities:
//   score = (1/n^3) sum_j ranks(col)[j] * w[j] - 1/4.
// The products and the running sum are exact whenever w is integer-valued
// (ranks are at most n, so everything stays below 2^53), which makes the
// censored estimator collapse to the complete-data one bit for bit when all
// weights are plain rank counts.
inline double rank_weight_score(const std::vector<double>& col,
                                const std::vector<double>& w, double n_cubed) {
  const rank_vector r = ranks_indicator(col);
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    s += static_cast<double>(r.ranks[j]) * w[j];
  }
  return s / n_cubed - 0.25;
}

}  // namespace detail

// Rank screening for a completely observed response:
//   score_k = (1/n^3) sum_j R_kj Q_j - 1/4
// with R, Q the indicator-count ranks of feature k and of y. Invariant under
// strictly increasing transforms of y or of any feature.
inline screening_scores srcs_scores(const data_matrix& x,
                                    const std::vector<double>& y,
                                    unsigned threads = 0) {
  if (y.size() != x.n()) {
    throw std::invalid_argument("srcs_scores: response length mismatch");
  }
  if (x.n() < 2) {
    throw std::invalid_argument("srcs_scores: need at least two observations");
  }
  require_finite(y, "srcs_scores");

  const rank_vector q = ranks_indicator(y);
  std::vector<double> w(q.ranks.begin(), q.ranks.end());
  const double n_d = static_cast<double>(x.n());
  const double n_cubed = n_d * n_d * n_d;

  screening_scores out;
  out.method = screen_method::srcs;
  out.n = x.n();
  out.scores.resize(x.p());
  parallel_for(x.p(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      out.scores[k] = detail::rank_weight_score(x.column(k), w, n_cubed);
    }
  });
  out.ranking = detail::rank_features(out.scores);
  return out;
}

// Rank screening for a right-censored response. The rank of the response is
// replaced by the per-observation imputed distribution value, scaled by n:
//   score_k = (1/n^3) sum_j R_kj * n * F_imp(times[j]) - 1/4.
// When every observation is an event this reproduces srcs_scores exactly.
inline screening_scores srcs_cen_scores(const data_matrix& x,
                                        const survival_response& resp,
                                        unsigned threads = 0) {
  if (resp.n() != x.n()) {
    throw std::invalid_argument("srcs_cen_scores: response length mismatch");
  }
  if (x.n() < 2) {
    throw std::invalid_argument("srcs_cen_scores: need at least two observations");
  }

  const imputed_distribution imp = impute_distribution(resp);
  const double n_d = static_cast<double>(x.n());
  const double n_cubed = n_d * n_d * n_d;

  screening_scores out;
  out.method = screen_method::srcs_cen;
  out.n = x.n();
  out.capped_weights = imp.capped_weights;
  out.scores.resize(x.p());
  parallel_for(x.p(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      out.scores[k] =
          detail::rank_weight_score(x.column(k), imp.scaled_values, n_cubed);
    }
  });
  out.ranking = detail::rank_features(out.scores);
  return out;
}

// Pearson marginal correlation, the classical linear screening baseline.
// A constant feature scores 0; a constant response is rejected.
inline screening_scores pearson_sis_scores(const data_matrix& x,
                                           const std::vector<double>& y,
                                           unsigned threads = 0) {
  if (y.size() != x.n()) {
    throw std::invalid_argument("pearson_sis_scores: response length mismatch");
  }
  if (x.n() < 2) {
    throw std::invalid_argument("pearson_sis_scores: need at least two observations");
  }
  require_finite(y, "pearson_sis_scores");

  const std::size_t n = x.n();
  const double n_d = static_cast<double>(n);
  const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / n_d;
  double y_ss = 0.0;
  for (double v : y) y_ss += (v - y_mean) * (v - y_mean);
  if (y_ss == 0.0) {
    throw std::invalid_argument("pearson_sis_scores: constant response");
  }

  screening_scores out;
  out.method = screen_method::pearson_sis;
  out.n = n;
  out.scores.resize(x.p());
  parallel_for(x.p(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const std::vector<double>& col = x.column(k);
      const double x_mean =
          std::accumulate(col.begin(), col.end(), 0.0) / n_d;
      double xy = 0.0, xx = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double dx = col[i] - x_mean;
        xy += dx * (y[i] - y_mean);
        xx += dx * dx;
      }
      out.scores[k] = (xx == 0.0) ? 0.0 : xy / std::sqrt(xx * y_ss);
    }
  });
  out.ranking = detail::rank_features(out.scores);
  return out;
}

// Screening-set size d_n = round(a * ceil(n / ln n)), clamped to [1, p].
inline std::size_t screening_set_size(std::size_t n, std::size_t p, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("screening_set_size: a must be positive");
  }
  if (n < 2 || p == 0) {
    throw std::invalid_argument("screening_set_size: need n >= 2 and p >= 1");
  }
  const double base = std::ceil(static_cast<double>(n) / std::log(static_cast<double>(n)));
  long long d = std::llround(a * base);
  if (d < 1) d = 1;
  if (d > static_cast<long long>(p)) d = static_cast<long long>(p);
  return static_cast<std::size_t>(d);
}

inline screening_scores select_top(screening_scores s, double a) {
  s.d_n = screening_set_size(s.n, s.scores.size(), a);
  s.selected.assign(s.ranking.begin(),
                    s.ranking.begin() + static_cast<std::ptrdiff_t>(s.d_n));
  return s;
}

// Smallest d such that the top-d features contain every truly active one:
// the worst (largest) 1-based ranking position over the active set.
inline std::size_t minimum_model_size(const screening_scores& s,
                                      const std::vector<std::size_t>& active) {
  if (active.empty()) {
    throw std::invalid_argument("minimum_model_size: empty active set");
  }
  std::vector<std::size_t> position(s.scores.size());
  for (std::size_t r = 0; r < s.ranking.size(); ++r) {
    position[s.ranking[r]] = r;
  }
  std::size_t worst = 0;
  for (std::size_t k : active) {
    if (k >= s.scores.size()) {
      throw std::invalid_argument("minimum_model_size: active index out of range");
    }
    worst = std::max(worst, position[k] + 1);
  }
  return worst;
}

struct active_set_diagnostic {
  double min_active_abs = 0.0;
  double max_inactive_abs = 0.0;
  double gap = 0.0;  // min_active_abs - max_inactive_abs; positive == separated
};

inline active_set_diagnostic active_gap(const screening_scores& s,
                                        const std::vector<std::size_t>& active) {
  if (active.empty()) {
    throw std::invalid_argument("active_gap: empty active set");
  }
  std::vector<char> is_active(s.scores.size(), 0);
  for (std::size_t k : active) {
    if (k >= s.scores.size()) {
      throw std::invalid_argument("active_gap: active index out of range");
    }
    is_active[k] = 1;
  }
  if (active.size() >= s.scores.size()) {
    bool all_active = std::all_of(is_active.begin(), is_active.end(),
                                  [](char c) { return c != 0; });
    if (all_active) {
      throw std::invalid_argument("active_gap: no inactive features left");
    }
  }

  active_set_diagnostic d;
  d.min_active_abs = std::numeric_limits<double>::infinity();
  d.max_inactive_abs = 0.0;
  for (std::size_t k = 0; k < s.scores.size(); ++k) {
    const double a = std::fabs(s.scores[k]);
    if (is_active[k]) {
      d.min_active_abs = std::min(d.min_active_abs, a);
    } else {
      d.max_inactive_abs = std::max(d.max_inactive_abs, a);
    }
  }
  d.gap = d.min_active_abs - d.max_inactive_abs;
  return d;
}

}  // namespace srcs
