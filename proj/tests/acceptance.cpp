// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fail.
// Thresholds are fixed here on purpose; do not tune them to the machine.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "srcs/bench.hpp"
#include "srcs/catalog.hpp"
#include "srcs/rank.hpp"
#include "srcs/screening.hpp"
#include "srcs/survival.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

int failures = 0;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s %2d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void guarded(int id, const std::string& what,
             const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [ok, detail] = body();
    report(id, ok, what, detail);
  } catch (const std::exception& e) {
    report(id, false, what, std::string("exception: ") + e.what());
  }
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

srcs::survival_response all_events(const std::vector<double>& y) {
  return srcs::survival_response{y, std::vector<int>(y.size(), 1)};
}

}  // namespace

int main() {
  const auto& catalog = srcs::builtin_catalog();
  constexpr std::uint64_t bench_seed = 42;
  constexpr std::size_t bench_reps = 100;

  // carried between criteria
  double median_complete = std::nan("");
  double median_obs80 = std::nan("");
  double median_cen80 = std::nan("");
  std::vector<srcs::bench_summary> speed_serial, speed_parallel;

  guarded(1, "screening scores equal the literal counting form, 200 instances", [] {
    const auto t0 = clock_type::now();
    std::mt19937_64 gen(1001);
    std::size_t mismatches = 0;
    for (int rep = 0; rep < 200; ++rep) {
      const std::size_t n = 2 + gen() % 49;  // up to 50
      const std::size_t p = 1 + gen() % 10;
      const auto x = oracle::random_matrix(gen, n, p, rep % 3 == 0);
      const auto y = oracle::random_vector(gen, n, rep % 4 == 0);
      const auto scores = srcs::srcs_scores(x, y);
      for (std::size_t k = 0; k < p; ++k) {
        if (scores.scores[k] != oracle::score_triple_loop(x.column(k), y)) {
          ++mismatches;
        }
      }
    }
    const double elapsed = seconds_since(t0);
    return std::make_pair(mismatches == 0 && elapsed < 10.0,
                          std::to_string(mismatches) + " mismatches, " +
                              fmt(elapsed, 3) + "s, limit 10s");
  });

  guarded(2, "Spearman rho reconstructed from the score, 100 tie-free instances", [] {
    std::mt19937_64 gen(1002);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
      const std::size_t n = 5 + gen() % 56;
      const auto x = oracle::random_matrix(gen, n, 1, false);
      const auto y = oracle::random_vector(gen, n, false);
      const double omega = srcs::srcs_scores(x, y).scores[0];
      const double nd = static_cast<double>(n);
      const double rank_sum = (omega + 0.25) * nd * nd * nd;
      const double rho_rec = 12.0 * (rank_sum / (nd * (nd * nd - 1.0)) -
                                     (nd + 1.0) / (4.0 * (nd - 1.0)));
      worst = std::max(worst,
                       std::fabs(rho_rec - srcs::spearman_rho(x.column(0), y)));
    }
    return std::make_pair(worst <= 1e-12,
                          "max |difference| " + fmt(worst, 3) + ", tolerance 1e-12");
  });

  guarded(3, "monotone transforms leave the scores bitwise unchanged, 100 instances", [] {
    std::mt19937_64 gen(1003);
    std::size_t broken = 0;
    const std::vector<std::function<double(double)>> maps{
        [](double v) { return std::exp(v); },
        [](double v) { return v * v * v; },
        [](double v) { return std::atan(v); }};
    for (int rep = 0; rep < 100; ++rep) {
      const std::size_t n = 4 + gen() % 40;
      const std::size_t p = 2 + gen() % 6;
      const auto x = oracle::random_matrix(gen, n, p, false);
      const auto y = oracle::random_vector(gen, n, false);
      const auto resp = oracle::random_censored(gen, n, 0.3);
      const auto base = srcs::srcs_scores(x, y).scores;
      const auto base_cen = srcs::srcs_cen_scores(x, resp).scores;
      const std::size_t k = gen() % p;
      for (const auto& f : maps) {
        std::vector<double> ty(y);
        for (double& v : ty) v = f(v);
        if (srcs::srcs_scores(x, ty).scores != base) ++broken;

        srcs::data_matrix tx = x;
        for (double& v : tx.columns[k]) v = f(v);
        if (srcs::srcs_scores(tx, y).scores != base) ++broken;
        if (srcs::srcs_cen_scores(tx, resp).scores != base_cen) ++broken;
      }
    }
    return std::make_pair(broken == 0,
                          std::to_string(broken) + " changed score vectors");
  });

  guarded(4, "censored estimator with all events reduces to the complete one, 100 instances", [] {
    std::mt19937_64 gen(1004);
    std::size_t mismatches = 0;
    for (int rep = 0; rep < 100; ++rep) {
      const std::size_t n = 2 + gen() % 50;
      const std::size_t p = 1 + gen() % 8;
      const auto x = oracle::random_matrix(gen, n, p, rep % 2 == 0);
      const auto y = oracle::random_vector(gen, n, rep % 2 == 0);
      if (srcs::srcs_cen_scores(x, all_events(y)).scores !=
          srcs::srcs_scores(x, y).scores) {
        ++mismatches;
      }
    }
    return std::make_pair(mismatches == 0,
                          std::to_string(mismatches) + " mismatching instances");
  });

  guarded(5, "hand-computed censoring survival fixtures reproduce", [] {
    std::ostringstream detail;
    bool ok = true;

    const auto none = srcs::km_censoring_survival(
        srcs::make_survival_response({1.0, 2.0, 3.0}, {1, 1, 1}));
    ok = ok && none.curve.jump_points.empty() && none.curve(2.0) == 1.0;

    const auto tail = srcs::km_censoring_survival(
        srcs::make_survival_response({1.0, 2.0}, {1, 0}));
    ok = ok && tail.curve.jump_points == std::vector<double>{2.0} &&
         tail.curve.values == std::vector<double>{0.0} &&
         tail.risk_counts == std::vector<long long>{1} && tail.curve(1.5) == 1.0;

    const auto mixed = srcs::km_censoring_survival(
        srcs::make_survival_response({1.0, 2.0, 3.0}, {0, 1, 0}));
    const bool mixed_ok =
        mixed.curve.jump_points == std::vector<double>{1.0, 3.0} &&
        mixed.curve.values.size() == 2 &&
        std::fabs(mixed.curve.values[0] - 2.0 / 3.0) <= 1e-15 &&
        mixed.curve.values[1] == 0.0 &&
        mixed.risk_counts == std::vector<long long>{3, 1};
    ok = ok && mixed_ok;

    detail << "three fixtures, worst deviation "
           << fmt(std::fabs(mixed.curve.values[0] - 2.0 / 3.0), 3);
    return std::make_pair(ok, detail.str());
  });

  guarded(6, "linear AR benchmark: median S 4 with zero q40-q60 gap", [&] {
    const auto t0 = clock_type::now();
    const auto rows = srcs::run_bench(catalog.at("ex1-case1a"),
                                      {srcs::screen_method::srcs}, bench_reps,
                                      bench_seed);
    const double elapsed = seconds_since(t0);
    median_complete = rows[0].median_s;
    const bool ok =
        rows[0].median_s == 4.0 && rows[0].q40_q60_gap == 0.0 && elapsed < 120.0;
    return std::make_pair(ok, "median " + fmt(rows[0].median_s) + ", gap " +
                                  fmt(rows[0].q40_q60_gap) + ", " +
                                  fmt(elapsed, 3) + "s, limit 120s");
  });

  guarded(7, "heavy-tailed benchmark: median S 4 with sd below 2", [&] {
    const auto rows = srcs::run_bench(catalog.at("ex1-case2a"),
                                      {srcs::screen_method::srcs}, bench_reps,
                                      bench_seed);
    const bool ok = rows[0].median_s == 4.0 && rows[0].sd_s < 2.0;
    return std::make_pair(ok, "median " + fmt(rows[0].median_s) + ", sd " +
                                  fmt(rows[0].sd_s));
  });

  guarded(8, "censored benchmarks hit their targets and keep S small", [&] {
    const auto light = srcs::run_bench(catalog.at("ex1-case1b-cens20"),
                                       {srcs::screen_method::srcs_cen},
                                       bench_reps, bench_seed);
    const auto heavy = srcs::run_bench(
        catalog.at("ex1-case1b-cens80"),
        {srcs::screen_method::srcs, srcs::screen_method::srcs_cen}, bench_reps,
        bench_seed);
    median_obs80 = heavy[0].median_s;
    median_cen80 = heavy[1].median_s;
    const double r20 = light[0].realized_censoring.value_or(-1.0);
    const double r80 = heavy[1].realized_censoring.value_or(-1.0);
    const bool ok = std::fabs(r20 - 0.20) <= 0.03 && std::fabs(r80 - 0.80) <= 0.03 &&
                    light[0].median_s == 4.0 && heavy[1].median_s <= 6.0;
    return std::make_pair(
        ok, "realized " + fmt(r20, 3) + "/" + fmt(r80, 3) +
                " for targets 0.20/0.80, censored-method medians " +
                fmt(light[0].median_s) + "/" + fmt(heavy[1].median_s));
  });

  guarded(9, "exponential single-index benchmark: median S 3", [&] {
    const auto t0 = clock_type::now();
    const auto rows = srcs::run_bench(catalog.at("ex3-case2a"),
                                      {srcs::screen_method::srcs}, bench_reps,
                                      bench_seed);
    const double elapsed = seconds_since(t0);
    const bool ok = rows[0].median_s == 3.0 && elapsed < 120.0;
    return std::make_pair(ok, "median " + fmt(rows[0].median_s) + ", " +
                                  fmt(elapsed, 3) + "s, limit 120s");
  });

  guarded(10, "censoring degrades the naive method and the censored one recovers", [&] {
    const bool ok = median_obs80 > median_complete && median_cen80 <= median_obs80;
    return std::make_pair(
        ok, "complete " + fmt(median_complete) + " < naive-at-80% " +
                fmt(median_obs80) + ", censored-method " + fmt(median_cen80));
  });

  guarded(11, "independent feature scores concentrate near zero, 500 seeds", [] {
    const std::size_t n = 2000;
    std::size_t inside = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      srcs::rng gx = srcs::rng::substream(seed, srcs::rng_stream::covariates);
      srcs::rng gy = srcs::rng::substream(seed, srcs::rng_stream::response);
      std::vector<double> x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = gx.normal();
        y[i] = gy.normal();
      }
      const double score =
          srcs::srcs_scores(srcs::make_data_matrix({x}), y).scores[0];
      worst = std::max(worst, std::fabs(score));
      inside += std::fabs(score) < 0.02;
    }
    return std::make_pair(inside >= 495,
                          std::to_string(inside) + "/500 inside 0.02, worst |score| " +
                              fmt(worst, 3));
  });

  guarded(12, "single pass under 1s and 2x speedup at 4 threads", [&] {
    const auto data = srcs::generate_dataset(catalog.at("ex1-case1a"), 7);
    double pass_time = 1e9;
    for (int i = 0; i < 3; ++i) {
      const auto t0 = clock_type::now();
      const auto scores = srcs::srcs_scores(data.x, data.y, 1);
      pass_time = std::min(pass_time, seconds_since(t0));
      if (scores.scores.empty()) break;  // keeps the call observable
    }

    const auto t1 = clock_type::now();
    speed_serial = srcs::run_bench(catalog.at("ex1-case1a"),
                                   {srcs::screen_method::srcs}, 40, 11, 1);
    const double serial_time = seconds_since(t1);
    const auto t4 = clock_type::now();
    speed_parallel = srcs::run_bench(catalog.at("ex1-case1a"),
                                     {srcs::screen_method::srcs}, 40, 11, 4);
    const double parallel_time = seconds_since(t4);
    const double speedup = serial_time / parallel_time;
    const bool identical = speed_serial[0].s_values == speed_parallel[0].s_values;

    const bool ok = pass_time < 1.0 && speedup >= 2.0 && identical;
    return std::make_pair(
        ok, "single pass " + fmt(pass_time, 3) + "s, speedup " + fmt(speedup, 3) +
                "x at 4 threads, outputs " +
                (identical ? "identical" : "DIFFER") + ", hardware threads " +
                std::to_string(std::thread::hardware_concurrency()));
  });

  guarded(13, "bench results identical for any thread count at a fixed seed", [&] {
    const auto two = srcs::run_bench(catalog.at("ex1-case1a"),
                                     {srcs::screen_method::srcs}, 40, 11, 2);
    const auto again = srcs::run_bench(catalog.at("ex1-case1a"),
                                       {srcs::screen_method::srcs}, 40, 11, 2);
    const bool ok = !speed_serial.empty() && !speed_parallel.empty() &&
                    speed_serial[0].s_values == speed_parallel[0].s_values &&
                    speed_serial[0].s_values == two[0].s_values &&
                    two[0].s_values == again[0].s_values;
    return std::make_pair(ok, std::string(ok ? "1/2/4 threads and a rerun agree"
                                             : "thread counts disagree"));
  });

  std::printf("%d of 13 criteria passed\n", 13 - failures);
  return failures == 0 ? 0 : 1;
}
