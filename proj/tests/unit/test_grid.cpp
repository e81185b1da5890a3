#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spm/error.hpp"
#include "spm/grid.hpp"

using namespace spm;

namespace {

constexpr double um = 1e-6;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("six nodes on 10 um") {
  const auto g = build_grid(6, 10 * um);
  const double expected[] = {0, 2, 4, 6, 8, 10};
  for (std::size_t j = 1; j <= 6; ++j) CHECK(g.node(j) == doctest::Approx(expected[j - 1] * um).epsilon(1e-15));
  CHECK(g.node(1) == 0.0);
  CHECK(g.node(6) == 10 * um);
  CHECK(g.spacing() == doctest::Approx(2 * um));
}

TEST_CASE("101 nodes on the FVM negative radius") {
  const auto g = build_grid(101, 10.70 * um);
  CHECK(g.spacing() == doctest::Approx(0.107 * um).epsilon(1e-14));
  CHECK(g.node(101) == 10.70 * um);
  for (std::size_t j = 1; j < 101; ++j) {
    CHECK(g.node(j + 1) - g.node(j) == doctest::Approx(g.spacing()).epsilon(1e-12));
  }
}

TEST_CASE("too few nodes and bad indices") {
  CHECK(code_of([] { build_grid(2, 1.0); }) == ErrorCode::TooFewNodes);
  CHECK(code_of([] { build_grid(5, 0.0); }) == ErrorCode::NonPositiveValue);
  const auto g = build_grid(6, 10 * um);
  CHECK(code_of([&] { fv_shell_volume(g, 6); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { fv_shell_volume(g, 0); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { cv_shell_volume(g, 7); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { g.node(0); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { shell_area(g, HalfIndex{7}); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("shell volumes") {
  const auto g = build_grid(6, 10 * um);
  const double k = 4.0 * std::numbers::pi / 3.0;
  CHECK(fv_shell_volume(g, 1) == doctest::Approx(k * 8 * um * um * um).epsilon(1e-14));
  CHECK(fv_shell_volume(g, 1) / (um * um * um) == doctest::Approx(33.51).epsilon(1e-3));
  CHECK(cv_shell_volume(g, 1) == doctest::Approx(k * um * um * um).epsilon(1e-14));
  CHECK(cv_shell_volume(g, 6) == doctest::Approx(k * (1000.0 - 729.0) * um * um * um).epsilon(1e-14));
  CHECK(cv_shell_volume(g, 3) == doctest::Approx(k * (125.0 - 27.0) * um * um * um).epsilon(1e-14));
}

TEST_CASE("both shell families partition the sphere") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> nodes(3, 400);
  std::uniform_real_distribution<double> radius(0.5e-6, 20e-6);
  for (int draw = 0; draw < 100; ++draw) {
    const auto g = build_grid(nodes(rng), radius(rng));
    const double total = sphere_volume(g.radius());
    double fv = 0, cv = 0;
    for (std::size_t j = 1; j < g.node_count(); ++j) fv += fv_shell_volume(g, j);
    for (std::size_t j = 1; j <= g.node_count(); ++j) cv += cv_shell_volume(g, j);
    CHECK(std::abs(fv - total) / total < 1e-14);
    CHECK(std::abs(cv - total) / total < 1e-14);
  }
}

TEST_CASE("shell areas") {
  const auto g = build_grid(6, 10 * um);
  CHECK(shell_area(g, 1) == 0.0);
  CHECK(shell_area(g, 6) == doctest::Approx(4 * std::numbers::pi * 100 * um * um).epsilon(1e-15));
  CHECK(g.half_node(1) == doctest::Approx(1 * um));
  CHECK(shell_area(g, HalfIndex{1}) == doctest::Approx(4 * std::numbers::pi * um * um).epsilon(1e-14));
  CHECK(g.half_node(0) == 0.0);
  CHECK(g.half_node(6) == 10 * um);
}

TEST_CASE("construction is deterministic") {
  const auto a = build_grid(41, 5.86e-6);
  const auto b = build_grid(41, 5.86e-6);
  CHECK(a.nodes() == b.nodes());
}
