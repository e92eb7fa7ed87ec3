#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "srcs/step_function.hpp"

namespace srcs {

// Right-censored response: times[i] is the observed follow-up, events[i] is 1
// for an observed event and 0 for censoring.
struct survival_response {
  std::vector<double> times;
  std::vector<int> events;

  std::size_t n() const { return times.size(); }

  bool complete() const {
    return std::all_of(events.begin(), events.end(),
                       [](int e) { return e == 1; });
  }

  double censoring_ratio() const {
    if (times.empty()) return 0.0;
    std::size_t censored = 0;
    for (int e : events) censored += (e == 0);
    return static_cast<double>(censored) / static_cast<double>(times.size());
  }
};

inline survival_response make_survival_response(std::vector<double> times,
                                                std::vector<int> events) {
  if (times.empty()) {
    throw std::invalid_argument("survival_response: empty sample");
  }
  if (times.size() != events.size()) {
    throw std::invalid_argument("survival_response: times/events length mismatch");
  }
  require_finite(times, "survival_response");
  for (int e : events) {
    if (e != 0 && e != 1) {
      throw std::invalid_argument("survival_response: event indicators must be 0 or 1");
    }
  }
  return survival_response{std::move(times), std::move(events)};
}

inline void check_survival(const survival_response& resp) {
  if (resp.times.empty() || resp.times.size() != resp.events.size()) {
    throw std::invalid_argument("survival_response: invalid shape");
  }
}

// Product-limit curve together with the at-risk count used at each jump.
struct km_curve {
  step_function curve;
  std::vector<long long> risk_counts;
};

// Kaplan-Meier estimate of the censoring survival function: censorings
// (events[i] == 0) are the terminal events, observed events act as censored
// observations. At tied times events are processed before censorings, so the
// at-risk set for a censoring jump at t excludes events occurring at t.
inline km_curve km_censoring_survival(const survival_response& resp) {
  check_survival(resp);
  const std::size_t n = resp.n();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&resp](std::size_t a, std::size_t b) {
    if (resp.times[a] != resp.times[b]) return resp.times[a] < resp.times[b];
    return resp.events[a] > resp.events[b];
  });

  km_curve km;
  km.curve.left_value = 1.0;
  double surv = 1.0;
  std::size_t i = 0;
  while (i < n) {
    const double t = resp.times[order[i]];
    std::size_t j = i;
    long long d_event = 0, d_cens = 0;
    while (j < n && resp.times[order[j]] == t) {
      (resp.events[order[j]] == 1 ? d_event : d_cens) += 1;
      ++j;
    }
    if (d_cens > 0) {
      const long long at_risk = static_cast<long long>(n - i) - d_event;
      surv *= 1.0 - static_cast<double>(d_cens) / static_cast<double>(at_risk);
      km.curve.jump_points.push_back(t);
      km.curve.values.push_back(surv);
      km.risk_counts.push_back(at_risk);
    }
    i = j;
  }
  return km;
}

namespace detail {

// Inverse-censoring-weighted distribution of the event times,
//   F(y) = (1/n) sum_i events[i] / G(times[i]-) * I(times[i] <= y),
// clamped to [0, 1]. Weight denominators are floored at 1/n; capped_weights
// counts how often the floor engaged. scaled_at_obs[i] holds n * F(times[i]).
// For a censoring-free sample every weight is exactly 1 and scaled_at_obs
// reproduces the indicator-count ranks of the times.
struct ipcw_distribution {
  step_function cdf;
  std::vector<double> scaled_at_obs;
  std::size_t capped_weights = 0;
};

inline ipcw_distribution ipcw_event_distribution(const survival_response& resp) {
  check_survival(resp);
  const std::size_t n = resp.n();
  const double n_d = static_cast<double>(n);
  const double floor_g = 1.0 / n_d;

  const km_curve g = km_censoring_survival(resp);

  ipcw_distribution out;
  std::vector<std::pair<double, double>> jumps;  // (event time, weight)
  jumps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (resp.events[i] != 1) continue;
    double denom = g.curve.left_limit(resp.times[i]);
    if (denom < floor_g) {
      denom = floor_g;
      ++out.capped_weights;
    }
    jumps.emplace_back(resp.times[i], 1.0 / denom);
  }
  std::sort(jumps.begin(), jumps.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  // cumulative weight at each distinct event time, clamped to [0, n]
  std::vector<double> scaled_steps;
  out.cdf.left_value = 0.0;
  double cum = 0.0;
  std::size_t i = 0;
  while (i < jumps.size()) {
    std::size_t j = i;
    while (j + 1 < jumps.size() && jumps[j + 1].first == jumps[i].first) {
      ++j;
    }
    for (std::size_t k = i; k <= j; ++k) cum += jumps[k].second;
    const double clamped = std::min(cum, n_d);
    out.cdf.jump_points.push_back(jumps[i].first);
    scaled_steps.push_back(clamped);
    out.cdf.values.push_back(clamped / n_d);
    i = j + 1;
  }

  out.scaled_at_obs.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto it = std::upper_bound(out.cdf.jump_points.begin(),
                               out.cdf.jump_points.end(), resp.times[k]);
    out.scaled_at_obs[k] =
        (it == out.cdf.jump_points.begin())
            ? 0.0
            : scaled_steps[static_cast<std::size_t>(
                  it - out.cdf.jump_points.begin()) - 1];
  }
  return out;
}

}  // namespace detail

inline step_function km_event_distribution(const survival_response& resp) {
  return detail::ipcw_event_distribution(resp).cdf;
}

// Per-observation imputed response distribution values,
//   values[i] = (1 - events[i]) / 2 + (1 + events[i]) / 2 * F(times[i]),
// with F the inverse-censoring-weighted event distribution. An observed event
// keeps its estimated rank F(times[i]); a censored observation is averaged
// with the mass above it. scaled_values[i] = n * values[i], kept in a form
// that is exact (an integer count) whenever the sample is censoring-free.
struct imputed_distribution {
  std::vector<double> values;
  std::vector<double> scaled_values;
  std::size_t capped_weights = 0;
};

inline imputed_distribution impute_distribution(const survival_response& resp) {
  const detail::ipcw_distribution d = detail::ipcw_event_distribution(resp);
  const std::size_t n = resp.n();
  const double n_d = static_cast<double>(n);

  imputed_distribution imp;
  imp.capped_weights = d.capped_weights;
  imp.values.resize(n);
  imp.scaled_values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = d.scaled_at_obs[i];
    imp.scaled_values[i] = (resp.events[i] == 1) ? s : 0.5 * (n_d + s);
    imp.values[i] = imp.scaled_values[i] / n_d;
  }
  return imp;
}

}  // namespace srcs
