#pragma once

#include <cstddef>
#include <cstdio>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace srcs {

struct csv_table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t columns() const { return header.size(); }

  // index of a named column, or npos
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return npos;
  }
};

// Comma-separated values with a mandatory header row. Double-quoted fields
// may contain commas, escaped quotes ("") and newlines; CR before LF is
// dropped. Every record must have as many fields as the header.
inline csv_table parse_csv(std::istream& in) {
  csv_table table;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool any_char = false;
  std::size_t line = 1;

  const auto end_field = [&]() {
    record.push_back(field);
    field.clear();
  };
  const auto end_record = [&]() {
    end_field();
    if (table.header.empty()) {
      table.header = record;
      if (table.header.empty() || (table.header.size() == 1 && table.header[0].empty())) {
        throw std::invalid_argument("csv: empty header row");
      }
    } else {
      if (record.size() != table.header.size()) {
        throw std::invalid_argument(
            "csv: row at line " + std::to_string(line) + " has " +
            std::to_string(record.size()) + " fields, expected " +
            std::to_string(table.header.size()));
      }
      table.rows.push_back(record);
    }
    record.clear();
    any_char = false;
  };

  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
        if (c == '\n') ++line;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        any_char = true;
        break;
      case ',':
        end_field();
        any_char = true;
        break;
      case '\r':
        break;
      case '\n':
        if (any_char || !field.empty() || !record.empty()) {
          end_record();
        }
        ++line;
        break;
      default:
        field += c;
        any_char = true;
        break;
    }
  }
  if (quoted) {
    throw std::invalid_argument("csv: unterminated quoted field");
  }
  if (any_char || !field.empty() || !record.empty()) {
    end_record();
  }
  if (table.header.empty()) {
    throw std::invalid_argument("csv: empty input");
  }
  return table;
}

inline bool csv_missing(const std::string& cell) {
  return cell.empty() || cell == "NA";
}

// strict numeric parse; nullopt for missing markers, throws on garbage
inline std::optional<double> csv_number(const std::string& cell) {
  if (csv_missing(cell)) return std::nullopt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(cell, &pos);
    while (pos < cell.size() &&
           (cell[pos] == ' ' || cell[pos] == '\t')) {
      ++pos;
    }
    if (pos != cell.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("csv: non-numeric cell '" + cell + "'");
  }
}

// shortest exact decimal round-trip for a double
inline std::string format_double(double v) {
  char buf[64];
  for (int precision : {15, 16, 17}) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace srcs
