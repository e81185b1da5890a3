#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <limits>
#include <random>
#include <sstream>

#include "spm/csv.hpp"
#include "spm/error.hpp"

using namespace spm;

TEST_CASE("parse skips comments and blank lines") {
  const auto t = parse_csv("# produced by hand\na,b\n1,2\n\n3.5, -4e-3\n");
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.column("b")[1] == -4e-3);
  CHECK(t.has_column("a"));
  CHECK_FALSE(t.has_column("c"));
  CHECK_THROWS_AS(t.column("c"), Error);
}

TEST_CASE("malformed tables") {
  CHECK_THROWS_AS(parse_csv(""), Error);
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), Error);
  CHECK_THROWS_AS(parse_csv("a,b\n1,x\n"), Error);
  CHECK_THROWS_AS(read_csv("/nonexistent.csv"), Error);
}

TEST_CASE("format_double round-trips") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(u(rng) * 30));
    const auto s = format_double(x);
    double y = 0;
    std::from_chars(s.data(), s.data() + s.size(), y);
    CHECK(y == x);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("write_csv emits the header and columns") {
  std::ostringstream out;
  write_csv(out, {"x", "y"}, {{1.0, 2.0}, {0.25, 1e-20}});
  const auto t = parse_csv(out.str());
  CHECK(t.column("y")[1] == 1e-20);
  CHECK_THROWS_AS(write_csv(out, {"x"}, {{1.0}, {2.0}}), Error);
  CHECK_THROWS_AS(write_csv(out, {"x", "y"}, {{1.0}, {2.0, 3.0}}), Error);
}
