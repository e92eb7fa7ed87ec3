#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "srcs/rank.hpp"

namespace srcs {

// Column-major design matrix. Every column has the same length n and finite
// entries; feature names are unique.
struct data_matrix {
  std::vector<std::vector<double>> columns;
  std::vector<std::string> feature_names;

  std::size_t n() const { return columns.empty() ? 0 : columns.front().size(); }
  std::size_t p() const { return columns.size(); }
  const std::vector<double>& column(std::size_t k) const { return columns[k]; }
};

inline data_matrix make_data_matrix(std::vector<std::vector<double>> columns,
                                    std::vector<std::string> names = {}) {
  if (columns.empty()) {
    throw std::invalid_argument("data_matrix: no columns");
  }
  const std::size_t n = columns.front().size();
  if (n == 0) {
    throw std::invalid_argument("data_matrix: empty columns");
  }
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k].size() != n) {
      throw std::invalid_argument("data_matrix: ragged columns");
    }
    require_finite(columns[k], "data_matrix");
  }
  if (names.empty()) {
    names.reserve(columns.size());
    for (std::size_t k = 0; k < columns.size(); ++k) {
      names.push_back("X" + std::to_string(k + 1));
    }
  }
  if (names.size() != columns.size()) {
    throw std::invalid_argument("data_matrix: name count mismatch");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : names) {
    if (!seen.insert(name).second) {
      throw std::invalid_argument("data_matrix: duplicate feature name '" + name + "'");
    }
  }
  return data_matrix{std::move(columns), std::move(names)};
}

}  // namespace srcs
