#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "srcs/bench.hpp"
#include "srcs/catalog.hpp"
#include "srcs/csv.hpp"
#include "srcs/screening.hpp"

namespace srcs::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_data = 3;
inline constexpr int json_schema_version = 1;

struct screen_config {
  std::string input_path;
  std::string response_column;
  std::string event_column;  // empty = complete response
  std::string method;        // empty = srcs, or srcs_cen when an event column is given
  double a = 1.0;
  std::string format = "table";
  unsigned threads = 0;
};

struct bench_config {
  std::vector<std::string> scenarios;
  std::vector<std::string> methods;
  std::size_t reps = 100;
  std::uint64_t seed = 1;
  std::string format = "table";
  unsigned threads = 0;
  std::string catalog_path;  // empty = builtin catalog
  bool list = false;
};

namespace detail {

inline screen_method parse_method(const std::string& name) {
  if (name == "srcs") return screen_method::srcs;
  if (name == "srcs_cen") return screen_method::srcs_cen;
  if (name == "pearson") return screen_method::pearson_sis;
  throw std::invalid_argument("unknown method '" + name + "'");
}

inline scenario_catalog resolve_catalog(const std::string& path) {
  if (path.empty()) return builtin_catalog();
  return load_catalog(path);
}

struct screen_input {
  data_matrix x;
  std::vector<double> response;
  std::vector<int> events;  // empty when no event column
  std::size_t rows_dropped = 0;
};

// Assembles the numeric screening input from a parsed CSV: locates the
// response and optional event columns, treats every other column as a
// feature, rejects all-missing features, and drops rows with a missing value
// in any used column.
inline screen_input build_screen_input(const csv_table& table,
                                       const std::string& response_column,
                                       const std::string& event_column) {
  const std::size_t response_idx = table.column_index(response_column);
  if (response_idx == csv_table::npos) {
    throw std::invalid_argument("response column '" + response_column + "' not found");
  }
  std::size_t event_idx = csv_table::npos;
  if (!event_column.empty()) {
    event_idx = table.column_index(event_column);
    if (event_idx == csv_table::npos) {
      throw std::invalid_argument("event column '" + event_column + "' not found");
    }
    if (event_idx == response_idx) {
      throw std::invalid_argument("response and event columns must differ");
    }
  }

  std::vector<std::size_t> feature_idx;
  for (std::size_t c = 0; c < table.columns(); ++c) {
    if (c != response_idx && c != event_idx) feature_idx.push_back(c);
  }
  if (feature_idx.empty()) {
    throw std::invalid_argument("no feature columns besides response/event");
  }
  if (table.rows.empty()) {
    throw std::invalid_argument("no data rows");
  }

  std::vector<std::size_t> used = feature_idx;
  used.push_back(response_idx);
  if (event_idx != csv_table::npos) used.push_back(event_idx);
  for (std::size_t c : used) {
    bool all_missing = true;
    for (const auto& row : table.rows) {
      if (!csv_missing(row[c])) {
        all_missing = false;
        break;
      }
    }
    if (all_missing) {
      throw std::invalid_argument("column '" + table.header[c] + "' has no observed values");
    }
  }

  screen_input out;
  std::vector<std::vector<double>> columns(feature_idx.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    bool missing = false;
    for (std::size_t c : used) {
      if (csv_missing(row[c])) {
        missing = true;
        break;
      }
    }
    if (missing) {
      ++out.rows_dropped;
      continue;
    }
    const auto cell = [&](std::size_t c) {
      try {
        return *csv_number(row[c]);
      } catch (const std::exception&) {
        throw std::invalid_argument("non-numeric cell '" + row[c] + "' at data row " +
                                    std::to_string(r + 1) + ", column '" +
                                    table.header[c] + "'");
      }
    };
    for (std::size_t k = 0; k < feature_idx.size(); ++k) {
      columns[k].push_back(cell(feature_idx[k]));
    }
    out.response.push_back(cell(response_idx));
    if (event_idx != csv_table::npos) {
      const double e = cell(event_idx);
      if (e != 0.0 && e != 1.0) {
        throw std::invalid_argument("event column '" + table.header[event_idx] +
                                    "' must be 0 or 1, got '" + row[event_idx] +
                                    "' at data row " + std::to_string(r + 1));
      }
      out.events.push_back(static_cast<int>(e));
    }
  }

  if (out.response.size() < 2) {
    throw std::invalid_argument("fewer than two complete rows after dropping missing values");
  }
  std::vector<std::string> names;
  for (std::size_t c : feature_idx) names.push_back(table.header[c]);
  out.x = make_data_matrix(std::move(columns), std::move(names));
  return out;
}

inline nlohmann::json screen_report_json(const screen_config& cfg,
                                         const screen_input& input,
                                         const screening_scores& scores,
                                         const std::string& method) {
  nlohmann::json doc;
  doc["schema_version"] = json_schema_version;
  doc["kind"] = "screen_report";
  doc["input"] = cfg.input_path;
  doc["response"] = cfg.response_column;
  if (cfg.event_column.empty()) {
    doc["event"] = nullptr;
  } else {
    doc["event"] = cfg.event_column;
  }
  doc["method"] = method;
  doc["n_used"] = scores.n;
  doc["rows_dropped"] = input.rows_dropped;
  doc["p"] = scores.scores.size();
  doc["a"] = cfg.a;
  doc["d_n"] = scores.d_n;
  doc["capped_weights"] = scores.capped_weights;
  nlohmann::json features = nlohmann::json::array();
  for (std::size_t r = 0; r < scores.ranking.size(); ++r) {
    const std::size_t k = scores.ranking[r];
    features.push_back({{"feature", input.x.feature_names[k]},
                        {"score", scores.scores[k]},
                        {"rank", r + 1},
                        {"selected", r < scores.d_n}});
  }
  doc["features"] = std::move(features);
  return doc;
}

inline void screen_report_csv(std::ostream& out, const screen_input& input,
                              const screening_scores& scores) {
  out << "feature,score,rank,selected\n";
  for (std::size_t r = 0; r < scores.ranking.size(); ++r) {
    const std::size_t k = scores.ranking[r];
    out << csv_escape(input.x.feature_names[k]) << ','
        << format_double(scores.scores[k]) << ',' << (r + 1) << ','
        << (r < scores.d_n ? 1 : 0) << '\n';
  }
}

inline void screen_report_table(std::ostream& out, const screen_config& cfg,
                                const screen_input& input,
                                const screening_scores& scores,
                                const std::string& method) {
  out << "method: " << method << "   observations: " << scores.n;
  if (input.rows_dropped > 0) {
    out << " (" << input.rows_dropped << " rows dropped for missing values)";
  }
  out << "   features: " << scores.scores.size() << '\n';
  out << "screening set: d_n = " << scores.d_n << " (a = " << cfg.a << ")\n";
  if (scores.capped_weights > 0) {
    out << "warning: " << scores.capped_weights
        << " censoring weights capped at n\n";
  }
  out << '\n' << std::left << std::setw(6) << "rank" << std::setw(24)
      << "feature" << "score\n";
  for (std::size_t r = 0; r < scores.d_n; ++r) {
    const std::size_t k = scores.ranking[r];
    out << std::left << std::setw(6) << (r + 1) << std::setw(24)
        << input.x.feature_names[k] << std::setprecision(6)
        << scores.scores[k] << '\n';
  }
}

inline int cmd_screen(const screen_config& cfg, std::ostream& out,
                      std::ostream& err) {
  std::ifstream file(cfg.input_path, std::ios::binary);
  if (!file) {
    err << "error: cannot open input file '" << cfg.input_path << "'\n";
    return exit_data;
  }

  try {
    const csv_table table = parse_csv(file);
    const screen_input input =
        build_screen_input(table, cfg.response_column, cfg.event_column);

    std::string method = cfg.method;
    if (method.empty()) {
      method = cfg.event_column.empty() ? "srcs" : "srcs_cen";
    }

    screening_scores scores;
    if (method == "srcs_cen") {
      if (cfg.event_column.empty()) {
        err << "error: method srcs_cen needs an --event column\n";
        return exit_usage;
      }
      scores = srcs_cen_scores(
          input.x, make_survival_response(input.response, input.events),
          cfg.threads);
    } else if (method == "srcs") {
      scores = srcs_scores(input.x, input.response, cfg.threads);
    } else {
      scores = pearson_sis_scores(input.x, input.response, cfg.threads);
    }
    scores = select_top(std::move(scores), cfg.a);

    if (cfg.format == "json") {
      out << screen_report_json(cfg, input, scores, method).dump(2) << '\n';
    } else if (cfg.format == "csv") {
      screen_report_csv(out, input, scores);
    } else {
      screen_report_table(out, cfg, input, scores, method);
    }
    return exit_ok;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_data;
  }
}

inline void bench_table(std::ostream& out,
                        const std::vector<bench_summary>& rows) {
  out << std::left << std::setw(22) << "scenario" << std::setw(10) << "method"
      << std::setw(6) << "reps" << std::setw(10) << "median_s" << std::setw(10)
      << "sd_s" << std::setw(13) << "q40_q60_gap" << std::setw(10) << "censor"
      << "wall_s\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(22) << r.scenario << std::setw(10) << r.method
        << std::setw(6) << r.replications << std::setw(10)
        << std::setprecision(4) << r.median_s << std::setw(10) << r.sd_s
        << std::setw(13) << r.q40_q60_gap << std::setw(10);
    if (r.realized_censoring) {
      out << *r.realized_censoring;
    } else {
      out << "-";
    }
    out << std::setprecision(3) << r.wall_seconds << '\n';
  }
}

inline void bench_csv(std::ostream& out,
                      const std::vector<bench_summary>& rows) {
  out << "scenario,method,reps,median_s,sd_s,q40_q60_gap,realized_censoring,"
         "seed,wall_time\n";
  for (const auto& r : rows) {
    out << csv_escape(r.scenario) << ',' << r.method << ',' << r.replications
        << ',' << format_double(r.median_s) << ',' << format_double(r.sd_s)
        << ',' << format_double(r.q40_q60_gap) << ',';
    if (r.realized_censoring) out << format_double(*r.realized_censoring);
    out << ',' << r.seed << ',' << format_double(r.wall_seconds) << '\n';
  }
}

inline nlohmann::json bench_json(const std::vector<bench_summary>& rows) {
  nlohmann::json doc;
  doc["schema_version"] = json_schema_version;
  doc["kind"] = "bench_results";
  doc["rng"] = rng::algorithm;
  doc["quantile_convention"] = "nearest-rank";
  nlohmann::json results = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["scenario"] = r.scenario;
    row["method"] = r.method;
    row["reps"] = r.replications;
    row["median_s"] = r.median_s;
    row["sd_s"] = r.sd_s;
    row["se_s"] = r.se_s;
    row["q40_q60_gap"] = r.q40_q60_gap;
    if (r.realized_censoring) {
      row["realized_censoring"] = *r.realized_censoring;
    } else {
      row["realized_censoring"] = nullptr;
    }
    row["seed"] = r.seed;
    row["wall_time"] = r.wall_seconds;
    row["s_values"] = r.s_values;
    results.push_back(std::move(row));
  }
  doc["results"] = std::move(results);
  return doc;
}

inline void list_scenarios(std::ostream& out, const scenario_catalog& cat) {
  out << std::left << std::setw(22) << "scenario" << std::setw(7) << "n"
      << std::setw(7) << "p" << std::setw(12) << "model" << "censor-target\n";
  for (const auto& s : cat.scenarios) {
    const char* model = "linear";
    if (s.family == response_family::single_index_cube) model = "index-cube";
    if (s.family == response_family::single_index_exp) model = "index-exp";
    if (s.family == response_family::additive) model = "additive";
    out << std::left << std::setw(22) << s.name << std::setw(7) << s.n
        << std::setw(7) << s.p << std::setw(12) << model;
    if (s.censoring && s.censoring->target_ratio) {
      out << *s.censoring->target_ratio;
    } else {
      out << "-";
    }
    out << '\n';
  }
}

inline int cmd_bench(const bench_config& cfg, std::ostream& out,
                     std::ostream& err) {
  try {
    const scenario_catalog cat = resolve_catalog(cfg.catalog_path);
    if (cfg.list) {
      list_scenarios(out, cat);
      return exit_ok;
    }
    if (cfg.scenarios.empty()) {
      err << "error: no scenarios requested (try --list)\n";
      return exit_usage;
    }

    std::vector<screen_method> methods;
    if (cfg.methods.empty()) {
      methods.push_back(screen_method::srcs);
    } else {
      for (const auto& m : cfg.methods) methods.push_back(parse_method(m));
    }

    std::vector<bench_summary> rows;
    for (const auto& name : cfg.scenarios) {
      const sim_scenario& scenario = cat.at(name);
      auto result = run_bench(scenario, methods, cfg.reps, cfg.seed, cfg.threads);
      for (auto& row : result) rows.push_back(std::move(row));
    }

    if (cfg.format == "json") {
      out << bench_json(rows).dump(2) << '\n';
    } else if (cfg.format == "csv") {
      bench_csv(out, rows);
    } else {
      bench_table(out, rows);
    }
    return exit_ok;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_data;
  }
}

}  // namespace detail

// Full command-line driver; args excludes the program name. Factored this way
// so tests can invoke commands in-process against string streams.
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Rank-correlation variable screening for complete and censored responses"};
  app.require_subcommand(1);

  screen_config scfg;
  auto* screen = app.add_subcommand(
      "screen", "Rank the features of a CSV dataset against a response");
  screen->add_option("--input", scfg.input_path, "CSV file with a header row")
      ->required();
  screen->add_option("--response", scfg.response_column, "response column name")
      ->required();
  screen->add_option("--event", scfg.event_column,
                     "event indicator column (1 = observed, 0 = censored); "
                     "presence switches to the censored estimator");
  screen->add_option("--method", scfg.method, "scoring method")
      ->check(CLI::IsMember({"srcs", "srcs_cen", "pearson"}));
  screen->add_option("--a", scfg.a, "screening set multiplier for d_n")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  screen->add_option("--format", scfg.format, "output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  screen->add_option("--threads", scfg.threads, "worker threads (0 = auto)")
      ->capture_default_str();

  bench_config bcfg;
  auto* bench = app.add_subcommand(
      "bench", "Run named simulation scenarios and summarize the minimum model size");
  bench->add_option("names", bcfg.scenarios, "scenario names");
  bench->add_option("--scenario", bcfg.scenarios, "scenario name (repeatable)");
  bench->add_option("--method", bcfg.methods, "method (repeatable)")
      ->check(CLI::IsMember({"srcs", "srcs_cen", "pearson"}));
  bench->add_option("--reps", bcfg.reps, "replications per scenario")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--seed", bcfg.seed, "master seed")->capture_default_str();
  bench->add_option("--format", bcfg.format, "output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  bench->add_option("--threads", bcfg.threads, "worker threads (0 = auto)")
      ->capture_default_str();
  bench->add_option("--catalog", bcfg.catalog_path,
                    "scenario catalog file (default: built-in catalog)");
  bench->add_flag("--list", bcfg.list, "list available scenarios and exit");

  std::string scenarios_catalog_path;
  auto* scenarios_cmd = app.add_subcommand("scenarios", "List the scenario catalog");
  scenarios_cmd->add_option("--catalog", scenarios_catalog_path,
                            "scenario catalog file (default: built-in catalog)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  if (screen->parsed()) return detail::cmd_screen(scfg, out, err);
  if (bench->parsed()) return detail::cmd_bench(bcfg, out, err);
  try {
    detail::list_scenarios(out, detail::resolve_catalog(scenarios_catalog_path));
    return exit_ok;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_data;
  }
}

}  // namespace srcs::cli
