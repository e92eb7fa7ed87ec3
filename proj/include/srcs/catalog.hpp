#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "srcs/simgen.hpp"

namespace srcs {

struct scenario_catalog {
  std::vector<sim_scenario> scenarios;

  const sim_scenario* find(const std::string& name) const {
    for (const auto& s : scenarios) {
      if (s.name == name) return &s;
    }
    return nullptr;
  }

  const sim_scenario& at(const std::string& name) const {
    const sim_scenario* s = find(name);
    if (!s) {
      std::string msg = "unknown scenario '" + name + "'; available:";
      for (const auto& sc : scenarios) msg += " " + sc.name;
      throw std::invalid_argument(msg);
    }
    return *s;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(scenarios.size());
    for (const auto& s : scenarios) out.push_back(s.name);
    return out;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline double parse_real(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("catalog line " + std::to_string(line_no) +
                                ": bad number '" + s + "'");
  }
}

inline std::vector<double> parse_reals(const std::string& s, int line_no) {
  std::vector<double> out;
  for (const auto& piece : split(s, ',')) out.push_back(parse_real(piece, line_no));
  return out;
}

// 1-based indices in the file, 0-based in memory
inline std::vector<std::size_t> parse_indices(const std::string& s, int line_no) {
  std::vector<std::size_t> out;
  for (const auto& piece : split(s, ',')) {
    const double v = parse_real(piece, line_no);
    if (v < 1.0 || v != std::floor(v)) {
      throw std::invalid_argument("catalog line " + std::to_string(line_no) +
                                  ": indices are 1-based integers");
    }
    out.push_back(static_cast<std::size_t>(v) - 1);
  }
  return out;
}

struct func_value {
  std::string name;
  std::vector<double> args;
};

inline func_value parse_func(const std::string& s, int line_no) {
  const std::size_t open = s.find('(');
  if (open == std::string::npos) return {trim(s), {}};
  if (s.back() != ')') {
    throw std::invalid_argument("catalog line " + std::to_string(line_no) +
                                ": expected closing ')' in '" + s + "'");
  }
  func_value f;
  f.name = trim(s.substr(0, open));
  const std::string inner = s.substr(open + 1, s.size() - open - 2);
  if (!trim(inner).empty()) f.args = parse_reals(inner, line_no);
  return f;
}

inline obs_map parse_obs_map(const std::string& s, int line_no) {
  if (s == "identity") return obs_map::identity;
  if (s == "pow9") return obs_map::ninth_power;
  if (s == "exp") return obs_map::exponential;
  throw std::invalid_argument("catalog line " + std::to_string(line_no) +
                              ": unknown observation map '" + s + "'");
}

}  // namespace detail

// Parses the key-value scenario catalog (see builtin_catalog_text for the
// grammar). Every scenario is validated before it is accepted.
inline scenario_catalog parse_catalog(const std::string& text) {
  scenario_catalog cat;
  sim_scenario cur;
  bool in_section = false;

  const auto fail = [](int line_no, const std::string& msg) {
    throw std::invalid_argument("catalog line " + std::to_string(line_no) + ": " + msg);
  };
  const auto finish = [&cat, &cur, &in_section]() {
    if (!in_section) return;
    validate_scenario(cur);
    if (cat.find(cur.name)) {
      throw std::invalid_argument("catalog: duplicate scenario '" + cur.name + "'");
    }
    cat.scenarios.push_back(cur);
  };

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "expected ']'");
      finish();
      cur = sim_scenario{};
      cur.name = detail::trim(line.substr(1, line.size() - 2));
      if (cur.name.empty()) fail(line_no, "empty scenario name");
      in_section = true;
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    if (!in_section) fail(line_no, "key outside a [scenario] section");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (value.empty()) fail(line_no, "empty value for '" + key + "'");

    if (key == "n" || key == "p") {
      const double v = detail::parse_real(value, line_no);
      if (v < 1.0 || v != std::floor(v)) fail(line_no, key + " must be a positive integer");
      (key == "n" ? cur.n : cur.p) = static_cast<std::size_t>(v);
    } else if (key == "x") {
      const auto f = detail::parse_func(value, line_no);
      if (f.name == "ar" && f.args.size() == 1) {
        cur.covariance = {cov_structure::ar, f.args[0]};
      } else if (f.name == "common-variance" && f.args.size() == 1) {
        cur.covariance = {cov_structure::cs_literal, f.args[0]};
      } else if (f.name == "exchangeable" && f.args.size() == 1) {
        cur.covariance = {cov_structure::cs_exchangeable, f.args[0]};
      } else if (f.name == "independent" && f.args.empty()) {
        cur.covariance = {cov_structure::independent, 0.0};
      } else if (f.name == "cauchy" && f.args.empty()) {
        cur.covariance = {cov_structure::cauchy_iid, 0.0};
      } else if (f.name == "uniform01" && f.args.empty()) {
        cur.covariance = {cov_structure::uniform_iid, 0.0};
      } else {
        fail(line_no, "unknown design '" + value + "'");
      }
    } else if (key == "model") {
      if (value == "linear") cur.family = response_family::linear;
      else if (value == "index-cube") cur.family = response_family::single_index_cube;
      else if (value == "index-exp") cur.family = response_family::single_index_exp;
      else if (value == "additive") cur.family = response_family::additive;
      else fail(line_no, "unknown model '" + value + "'");
    } else if (key == "beta") {
      cur.beta = detail::parse_reals(value, line_no);
    } else if (key == "terms") {
      for (const auto& piece : detail::split(value, ',')) {
        const auto parts = detail::split(piece, ':');
        if (parts.size() != 3) fail(line_no, "terms entries are feature:kind:scale");
        additive_term t;
        const double f = detail::parse_real(parts[0], line_no);
        if (f < 1.0 || f != std::floor(f)) fail(line_no, "term feature must be a 1-based integer");
        t.feature = static_cast<std::size_t>(f) - 1;
        if (parts[1] == "linear") t.kind = term_kind::linear;
        else if (parts[1] == "tan-half-pi") t.kind = term_kind::tan_half_pi;
        else if (parts[1] == "square") t.kind = term_kind::square;
        else fail(line_no, "unknown term kind '" + parts[1] + "'");
        t.scale = detail::parse_real(parts[2], line_no);
        cur.additive.push_back(t);
      }
    } else if (key == "error") {
      const auto f = detail::parse_func(value, line_no);
      if (f.name == "normal" && f.args.size() == 1) {
        cur.noise = {noise_kind::normal, f.args[0]};
      } else if (f.name == "t" && f.args.size() == 1) {
        cur.noise = {noise_kind::student_t, f.args[0]};
      } else {
        fail(line_no, "unknown error law '" + value + "'");
      }
    } else if (key == "active") {
      cur.true_active = detail::parse_indices(value, line_no);
    } else if (key == "x-observed") {
      cur.x_observed = detail::parse_obs_map(value, line_no);
    } else if (key == "y-observed") {
      cur.y_observed = detail::parse_obs_map(value, line_no);
    } else if (key == "censor-kappa") {
      const auto k = detail::parse_reals(value, line_no);
      if (k.size() != 3) fail(line_no, "censor-kappa takes exactly three weights");
      if (!cur.censoring) cur.censoring.emplace();
      cur.censoring->kappa = {k[0], k[1], k[2]};
    } else if (key == "censor-target") {
      if (!cur.censoring) cur.censoring.emplace();
      cur.censoring->target_ratio = detail::parse_real(value, line_no);
    } else if (key == "outliers") {
      for (const auto& piece : detail::split(value, ',')) {
        const auto parts = detail::split(piece, ':');
        if (parts.size() != 2) fail(line_no, "outliers entries are observation:multiplier");
        const double obs = detail::parse_real(parts[0], line_no);
        if (obs < 1.0 || obs != std::floor(obs)) {
          fail(line_no, "outlier observation must be a 1-based integer");
        }
        cur.outliers.push_back(
            {static_cast<std::size_t>(obs) - 1, detail::parse_real(parts[1], line_no)});
      }
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }
  finish();
  if (cat.scenarios.empty()) {
    throw std::invalid_argument("catalog: no scenarios defined");
  }
  return cat;
}

inline scenario_catalog load_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open catalog file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

// The shipped benchmark scenarios. The same text lives in scenarios.cfg at
// the repository root for editing and for --catalog experiments.
inline const std::string& builtin_catalog_text() {
  static const std::string text = R"cfg(# Benchmark scenario catalog.
#
# One [name] section per scenario followed by key = value lines; '#' starts
# a comment. Feature and observation indices are 1-based.
#
# Keys:
#   n, p           sample size and feature count
#   x              ar(rho) | common-variance(v) | exchangeable(rho) |
#                  independent | cauchy | uniform01
#   model          linear | index-cube | index-exp | additive
#   beta           leading model coefficients (linear and index models)
#   terms          additive terms, feature:kind:scale with kind one of
#                  linear | tan-half-pi | square
#   error          normal(variance) | t(df)
#   active         truly active features
#   x-observed     identity | pow9 | exp; observed X_j = map(latent X_j)
#   y-observed     identity | pow9 | exp; observed Y = map(signal + error)
#   censor-kappa   three censoring mixture weights, normalized |k|/sum|k|;
#                  components are N(-5,2), N(5,1), N(55,1)
#   censor-target  target censoring ratio; the mixture is shifted to hit it
#   outliers       observation:multiplier pairs applied to the response

# ---- linear model, AR design ------------------------------------------

[ex1-case1a]
n = 200
p = 1000
x = ar(0.6)
model = linear
beta = 1, 1, 1, 1
error = normal(1)
active = 1, 2, 3, 4

[ex1-case1b-cens20]
n = 200
p = 1000
x = ar(0.6)
model = linear
beta = 1, 1, 1, 1
error = normal(1)
active = 1, 2, 3, 4
censor-kappa = 0.4, -0.2, 0.1
censor-target = 0.20

[ex1-case1b-cens80]
n = 200
p = 1000
x = ar(0.6)
model = linear
beta = 1, 1, 1, 1
error = normal(1)
active = 1, 2, 3, 4
censor-kappa = 0.4, -0.2, 0
censor-target = 0.80

[ex1-case2a]
n = 200
p = 1000
x = ar(0.6)
model = linear
beta = 1, 1, 1, 1
error = t(1)
active = 1, 2, 3, 4

[ex1-case2b-cens20]
n = 200
p = 1000
x = ar(0.6)
model = linear
beta = 1, 1, 1, 1
error = t(1)
active = 1, 2, 3, 4
censor-kappa = 0.4, -0.2, 0.12
censor-target = 0.20

[ex1-case2b-cens80]
n = 200
p = 1000
x = ar(0.6)
model = linear
beta = 1, 1, 1, 1
error = t(1)
active = 1, 2, 3, 4
censor-kappa = 0.4, -0.2, -0.01
censor-target = 0.80

[ex1-case3a]
n = 200
p = 1000
x = common-variance(0.8)
model = linear
beta = 2, -2
error = normal(1)
active = 1, 2

[ex1-case3b-cens20]
n = 200
p = 1000
x = common-variance(0.8)
model = linear
beta = 2, -2
error = normal(1)
active = 1, 2
censor-kappa = 0.4, -0.2, 0.11
censor-target = 0.20

[ex1-case3b-cens80]
n = 200
p = 1000
x = common-variance(0.8)
model = linear
beta = 2, -2
error = normal(1)
active = 1, 2
censor-kappa = 0.4, -0.2, 0
censor-target = 0.80

[ex1-case4a]
n = 200
p = 1000
x = common-variance(0.8)
model = linear
beta = 2, -2
error = normal(1)
active = 1, 2
outliers = 10:100, 30:100, 50:100, 70:100, 20:-100, 40:-100, 60:-100, 80:-100

[ex1-case4b-cens20]
n = 200
p = 1000
x = common-variance(0.8)
model = linear
beta = 2, -2
error = normal(1)
active = 1, 2
outliers = 10:100, 30:100, 50:100, 70:100, 20:-100, 40:-100, 60:-100, 80:-100
censor-kappa = 0.4, -0.2, 0.11
censor-target = 0.20

[ex1-case4b-cens80]
n = 200
p = 1000
x = common-variance(0.8)
model = linear
beta = 2, -2
error = normal(1)
active = 1, 2
outliers = 10:100, 30:100, 50:100, 70:100, 20:-100, 40:-100, 60:-100, 80:-100
censor-kappa = 0.4, -0.2, 0
censor-target = 0.80

# ---- linear model observed through monotone distortions ----------------

[ex2-case1a]
n = 200
p = 1000
x = common-variance(0.8)
model = linear
beta = 2, -2
error = normal(1)
active = 1, 2
x-observed = pow9

[ex2-case1b-cens20]
n = 200
p = 1000
x = common-variance(0.8)
model = linear
beta = 2, -2
error = normal(1)
active = 1, 2
x-observed = pow9
censor-kappa = 0.8, -0.9, 0.21
censor-target = 0.20

[ex2-case1b-cens80]
n = 200
p = 1000
x = common-variance(0.8)
model = linear
beta = 2, -2
error = normal(1)
active = 1, 2
x-observed = pow9
censor-kappa = 0.8, -0.9, 0.1
censor-target = 0.80

[ex2-case2a]
n = 200
p = 1000
x = common-variance(0.8)
model = linear
beta = 2, -2
error = normal(1)
active = 1, 2
y-observed = pow9

[ex2-case2b-cens20]
n = 200
p = 1000
x = common-variance(0.8)
model = linear
beta = 2, -2
error = normal(1)
active = 1, 2
y-observed = pow9
censor-kappa = 0.8, -0.9, 0.21
censor-target = 0.20

[ex2-case2b-cens80]
n = 200
p = 1000
x = common-variance(0.8)
model = linear
beta = 2, -2
error = normal(1)
active = 1, 2
y-observed = pow9
censor-kappa = 0.8, -0.9, 0.1
censor-target = 0.80

[ex2-case3a]
n = 200
p = 1000
x = ar(0.8)
model = linear
beta = 1, 1, 1, 1
error = normal(1)
active = 1, 2, 3, 4
x-observed = exp

[ex2-case3b-cens20]
n = 200
p = 1000
x = ar(0.8)
model = linear
beta = 1, 1, 1, 1
error = normal(1)
active = 1, 2, 3, 4
x-observed = exp
censor-kappa = 0.8, -0.9, 0.21
censor-target = 0.20

[ex2-case3b-cens80]
n = 200
p = 1000
x = ar(0.8)
model = linear
beta = 1, 1, 1, 1
error = normal(1)
active = 1, 2, 3, 4
x-observed = exp
censor-kappa = 0.8, -0.9, 0.1
censor-target = 0.80

[ex2-case4a]
n = 200
p = 1000
x = ar(0.8)
model = linear
beta = 1, 1, 1, 1
error = normal(1)
active = 1, 2, 3, 4
y-observed = exp

[ex2-case4b-cens20]
n = 200
p = 1000
x = ar(0.8)
model = linear
beta = 1, 1, 1, 1
error = normal(1)
active = 1, 2, 3, 4
y-observed = exp
censor-kappa = 0.8, -0.9, 0.21
censor-target = 0.20

[ex2-case4b-cens80]
n = 200
p = 1000
x = ar(0.8)
model = linear
beta = 1, 1, 1, 1
error = normal(1)
active = 1, 2, 3, 4
y-observed = exp
censor-kappa = 0.8, -0.9, 0.1
censor-target = 0.80

# ---- single-index models ------------------------------------------------

[ex3-case1a]
n = 200
p = 1000
x = cauchy
model = index-cube
beta = 3, 2, 1
error = normal(1)
active = 1, 2, 3

[ex3-case1b-cens25]
n = 200
p = 1000
x = cauchy
model = index-cube
beta = 3, 2, 1
error = normal(1)
active = 1, 2, 3
censor-kappa = 4, 2, 3
censor-target = 0.25

[ex3-case1b-cens60]
n = 200
p = 1000
x = cauchy
model = index-cube
beta = 3, 2, 1
error = normal(1)
active = 1, 2, 3
censor-kappa = 0.8, -0.3, 0
censor-target = 0.60

[ex3-case2a]
n = 200
p = 1000
x = independent
model = index-exp
beta = 1, 1, 1
error = normal(1)
active = 1, 2, 3

[ex3-case2b-cens15]
n = 200
p = 1000
x = independent
model = index-exp
beta = 1, 1, 1
error = normal(1)
active = 1, 2, 3
censor-kappa = 0.2, -0.2, 0.15
censor-target = 0.15

[ex3-case2b-cens65]
n = 200
p = 1000
x = independent
model = index-exp
beta = 1, 1, 1
error = normal(1)
active = 1, 2, 3
censor-kappa = 0.2, -0.2, 0.05
censor-target = 0.65

# ---- additive model ------------------------------------------------------

[ex4-case1a]
n = 200
p = 1000
x = uniform01
model = additive
terms = 1:linear:4, 2:tan-half-pi:2, 3:square:5
error = normal(1)
active = 1, 2, 3

[ex4-case1b-cens20]
n = 200
p = 1000
x = uniform01
model = additive
terms = 1:linear:4, 2:tan-half-pi:2, 3:square:5
error = normal(1)
active = 1, 2, 3
censor-kappa = 0.2, -0.3, 0.22
censor-target = 0.20

[ex4-case1b-cens60]
n = 200
p = 1000
x = uniform01
model = additive
terms = 1:linear:4, 2:tan-half-pi:2, 3:square:5
error = normal(1)
active = 1, 2, 3
censor-kappa = 0.2, -0.3, 0.15
censor-target = 0.60
)cfg";
  return text;
}

inline const scenario_catalog& builtin_catalog() {
  static const scenario_catalog cat = parse_catalog(builtin_catalog_text());
  return cat;
}

}  // namespace srcs
