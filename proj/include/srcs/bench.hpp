#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "srcs/parallel.hpp"
#include "srcs/screening.hpp"
#include "srcs/simgen.hpp"

namespace srcs {

struct s_summary {
  double median = 0.0;
  double sd = 0.0;           // sample standard deviation across replications
  double se = 0.0;           // sd / sqrt(replications)
  double q40_q60_gap = 0.0;  // nearest-rank 0.6 quantile minus 0.4 quantile
};

// Nearest-rank quantile on a sorted sample: the ceil(q * N)-th order statistic.
inline double nearest_rank_quantile(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  std::size_t k = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(n)));
  if (k < 1) k = 1;
  if (k > n) k = n;
  return sorted[k - 1];
}

inline s_summary summarize(const std::vector<std::size_t>& s_values) {
  if (s_values.empty()) {
    throw std::invalid_argument("summarize: empty sample");
  }
  std::vector<double> sorted(s_values.begin(), s_values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  s_summary out;
  out.median = (n % 2 == 1) ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  if (n > 1) {
    double mean = 0.0;
    for (double v : sorted) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : sorted) ss += (v - mean) * (v - mean);
    out.sd = std::sqrt(ss / static_cast<double>(n - 1));
    out.se = out.sd / std::sqrt(static_cast<double>(n));
  }
  out.q40_q60_gap =
      nearest_rank_quantile(sorted, 0.6) - nearest_rank_quantile(sorted, 0.4);
  return out;
}

struct bench_summary {
  std::string scenario;
  std::string method;
  std::size_t replications = 0;
  std::vector<std::size_t> s_values;  // minimum model size, by replication index
  double median_s = 0.0;
  double sd_s = 0.0;
  double se_s = 0.0;
  double q40_q60_gap = 0.0;
  std::optional<double> realized_censoring;  // mean over replications
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;  // elapsed for the whole scenario run
};

// Runs `replications` independent draws of the scenario, scores each with
// every requested method, and aggregates the minimum model sizes. Each
// replication derives its own RNG seed from (master_seed, replication index),
// so results are identical for any thread count. Methods that expect a
// complete response treat the observed follow-up times as the response when
// the scenario censors, and srcs_cen on an uncensored scenario sees an
// all-events sample.
inline std::vector<bench_summary> run_bench(const sim_scenario& scenario,
                                            const std::vector<screen_method>& methods,
                                            std::size_t replications,
                                            std::uint64_t master_seed,
                                            unsigned threads = 0) {
  if (replications == 0) {
    throw std::invalid_argument("run_bench: need at least one replication");
  }
  if (methods.empty()) {
    throw std::invalid_argument("run_bench: no methods requested");
  }
  validate_scenario(scenario);

  const auto start = std::chrono::steady_clock::now();

  sim_scenario run_scenario = scenario;
  if (run_scenario.censoring && run_scenario.censoring->target_ratio) {
    run_scenario.censoring->calibration_shift =
        calibrate_censoring(run_scenario, master_seed).shift;
  }

  std::vector<std::vector<std::size_t>> s_values(
      methods.size(), std::vector<std::size_t>(replications, 0));
  std::vector<double> censor_ratios(replications, 0.0);

  parallel_for(replications, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const std::uint64_t rep_seed = rng::mix(master_seed, r);
      const sim_dataset data = generate_dataset(run_scenario, rep_seed);

      const std::vector<double>& observed =
          data.censored ? data.censored->times : data.y;
      if (data.censored) {
        censor_ratios[r] = data.censored->censoring_ratio();
      }

      for (std::size_t m = 0; m < methods.size(); ++m) {
        screening_scores scores;
        switch (methods[m]) {
          case screen_method::srcs:
            scores = srcs_scores(data.x, observed, 1);
            break;
          case screen_method::srcs_cen: {
            if (data.censored) {
              scores = srcs_cen_scores(data.x, *data.censored, 1);
            } else {
              survival_response complete{
                  data.y, std::vector<int>(data.y.size(), 1)};
              scores = srcs_cen_scores(data.x, complete, 1);
            }
            break;
          }
          case screen_method::pearson_sis:
            scores = pearson_sis_scores(data.x, observed, 1);
            break;
        }
        s_values[m][r] = minimum_model_size(scores, run_scenario.true_active);
      }
    }
  });

  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::vector<bench_summary> out;
  out.reserve(methods.size());
  for (std::size_t m = 0; m < methods.size(); ++m) {
    bench_summary row;
    row.scenario = scenario.name;
    row.method = method_name(methods[m]);
    row.replications = replications;
    row.s_values = std::move(s_values[m]);
    const s_summary stats = summarize(row.s_values);
    row.median_s = stats.median;
    row.sd_s = stats.sd;
    row.se_s = stats.se;
    row.q40_q60_gap = stats.q40_q60_gap;
    if (scenario.censoring) {
      double total = 0.0;
      for (double v : censor_ratios) total += v;
      row.realized_censoring = total / static_cast<double>(replications);
    }
    row.seed = master_seed;
    row.wall_seconds = elapsed;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace srcs
