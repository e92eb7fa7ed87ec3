#include <sstream>
#include <string>

#include "catch_amalgamated.hpp"
#include "srcs/csv.hpp"

using srcs::csv_table;
using srcs::parse_csv;

namespace {

csv_table parse(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

}  // namespace

TEST_CASE("csv parses plain tables") {
  const auto t = parse("a,b,c\n1,2,3\n4,5,6\n");
  CHECK(t.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0] == std::vector<std::string>{"1", "2", "3"});
  CHECK(t.rows[1] == std::vector<std::string>{"4", "5", "6"});
  CHECK(t.columns() == 3);
  CHECK(t.column_index("b") == 1);
  CHECK(t.column_index("z") == csv_table::npos);
}

TEST_CASE("csv handles quoting, CRLF and missing trailing newline") {
  const auto t = parse("name,note\r\n\"x,1\",\"say \"\"hi\"\"\"\r\n\"multi\nline\",plain");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == "x,1");
  CHECK(t.rows[0][1] == "say \"hi\"");
  CHECK(t.rows[1][0] == "multi\nline");
  CHECK(t.rows[1][1] == "plain");
}

TEST_CASE("csv keeps empty fields and skips blank lines") {
  const auto t = parse("a,b\n,2\n\n1,\n");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0] == std::vector<std::string>{"", "2"});
  CHECK(t.rows[1] == std::vector<std::string>{"1", ""});
}

TEST_CASE("csv rejects malformed input") {
  CHECK_THROWS_AS(parse(""), std::invalid_argument);
  CHECK_THROWS_AS(parse("a,b\n\"open") , std::invalid_argument);
  CHECK_THROWS_WITH(parse("a,b\n1,2,3\n"),
                    Catch::Matchers::ContainsSubstring("expected 2"));
  CHECK_THROWS_WITH(parse("a,b\n1\n"),
                    Catch::Matchers::ContainsSubstring("1 fields"));
}

TEST_CASE("numeric cells parse strictly") {
  CHECK(srcs::csv_number("1.5") == 1.5);
  CHECK(srcs::csv_number("-2e3") == -2000.0);
  CHECK(srcs::csv_number("  3") == 3.0);  // stod skips leading blanks
  CHECK(srcs::csv_number("4 ") == 4.0);
  CHECK_FALSE(srcs::csv_number("").has_value());
  CHECK_FALSE(srcs::csv_number("NA").has_value());
  CHECK_THROWS_AS(srcs::csv_number("12x"), std::invalid_argument);
  CHECK_THROWS_AS(srcs::csv_number("one"), std::invalid_argument);

  CHECK(srcs::csv_missing(""));
  CHECK(srcs::csv_missing("NA"));
  CHECK_FALSE(srcs::csv_missing("na"));
  CHECK_FALSE(srcs::csv_missing("0"));
}

TEST_CASE("doubles format to round-trip exactly") {
  for (const double v : {0.1, 1.0 / 3.0, -2.5e-17, 12345.678901234567, 0.0, -0.0,
                         6.02e23, 1e-300}) {
    const std::string s = srcs::format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(srcs::format_double(1.0) == "1");
  CHECK(srcs::format_double(0.5) == "0.5");
}

TEST_CASE("csv escaping quotes only when needed") {
  CHECK(srcs::csv_escape("plain") == "plain");
  CHECK(srcs::csv_escape("with,comma") == "\"with,comma\"");
  CHECK(srcs::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(srcs::csv_escape("two\nlines") == "\"two\nlines\"");
}
