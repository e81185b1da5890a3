#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "spm/error.hpp"
#include "spm/pso.hpp"

using namespace spm;

namespace {

double sphere(std::span<const double> x) {
  double s = 0;
  for (double v : x) s += v * v;
  return s;
}

double rosenbrock(std::span<const double> x) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}

}  // namespace

TEST_CASE("sphere in four dimensions") {
  PsoConfig cfg;
  cfg.seed = 42;
  cfg.max_iterations = 200;
  cfg.function_tolerance = 1e-12;
  const std::vector<double> lo(4, -5.0), hi(4, 5.0);
  const auto r = pso_minimize(sphere, lo, hi, cfg);
  CHECK(r.best_value < 1e-6);
  CHECK(r.iterations <= 200);
  const auto again = pso_minimize(sphere, lo, hi, cfg);
  CHECK(again.best_point == r.best_point);
  CHECK(again.trace == r.trace);
}

TEST_CASE("Rosenbrock in two dimensions") {
  PsoConfig cfg;
  cfg.seed = 7;
  cfg.function_tolerance = 1e-10;
  cfg.max_stall_iterations = 50;
  const std::vector<double> lo(2, -2.0), hi(2, 2.0);
  const auto r = pso_minimize(rosenbrock, lo, hi, cfg);
  CHECK(r.best_value < 1e-3);
  CHECK(r.best_point[0] == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("flat objective stops through the stall rule") {
  PsoConfig cfg;
  cfg.max_iterations = 1000;
  const std::vector<double> lo{0.0, 0.0}, hi{1.0, 1.0};
  const auto r = pso_minimize([](std::span<const double>) { return 3.5; }, lo, hi, cfg);
  CHECK(r.best_value == 3.5);
  CHECK(r.stalled);
  CHECK(r.iterations == cfg.max_stall_iterations);
}

TEST_CASE("never evaluates outside the box and the trace never rises") {
  std::mutex m;
  bool outside = false;
  const std::vector<double> lo{-1.0, 2.0, 0.0}, hi{1.0, 3.0, 1e-3};
  auto f = [&](std::span<const double> x) {
    for (std::size_t d = 0; d < x.size(); ++d) {
      if (x[d] < lo[d] || x[d] > hi[d]) {
        std::lock_guard lock(m);
        outside = true;
      }
    }
    // Minimum sits outside the box, so particles hammer the walls.
    return std::pow(x[0] - 10.0, 2) + std::pow(x[1] + 4.0, 2) + x[2];
  };
  PsoConfig cfg;
  cfg.max_iterations = 60;
  const auto r = pso_minimize(f, lo, hi, cfg);
  CHECK_FALSE(outside);
  for (std::size_t d = 0; d < 3; ++d) {
    CHECK(r.best_point[d] >= lo[d]);
    CHECK(r.best_point[d] <= hi[d]);
  }
  for (std::size_t k = 1; k < r.trace.size(); ++k) CHECK(r.trace[k] <= r.trace[k - 1]);
  CHECK(r.best_point[0] == doctest::Approx(1.0));
}

TEST_CASE("failed evaluations score infinity without aborting") {
  auto f = [](std::span<const double> x) {
    if (x[0] > 0.5) throw std::runtime_error("simulation blew up");
    if (x[0] < -0.5) return std::numeric_limits<double>::quiet_NaN();
    return x[0] * x[0];
  };
  PsoConfig cfg;
  cfg.max_iterations = 50;
  const std::vector<double> lo{-1.0}, hi{1.0};
  const auto r = pso_minimize(f, lo, hi, cfg);
  CHECK(std::isfinite(r.best_value));
  CHECK(std::abs(r.best_point[0]) <= 0.5);

  try {
    pso_minimize([](std::span<const double>) { return std::numeric_limits<double>::infinity(); }, lo, hi, cfg);
    FAIL("expected AllEvaluationsFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AllEvaluationsFailed);
  }
}

TEST_CASE("result does not depend on the number of workers") {
  PsoConfig a, b;
  a.seed = b.seed = 11;
  a.max_iterations = b.max_iterations = 40;
  a.workers = 1;
  b.workers = 8;
  const std::vector<double> lo(3, -3.0), hi(3, 3.0);
  const auto ra = pso_minimize(sphere, lo, hi, a);
  const auto rb = pso_minimize(sphere, lo, hi, b);
  CHECK(ra.best_point == rb.best_point);
  CHECK(ra.trace == rb.trace);
}

TEST_CASE("partial neighbourhoods still converge") {
  PsoConfig cfg;
  cfg.min_neighbors_fraction = 0.25;
  cfg.seed = 3;
  cfg.max_iterations = 300;
  cfg.function_tolerance = 1e-12;
  const std::vector<double> lo(2, -5.0), hi(2, 5.0);
  CHECK(pso_minimize(sphere, lo, hi, cfg).best_value < 1e-6);
}

TEST_CASE("invalid configurations") {
  const std::vector<double> lo{0.0}, hi{1.0};
  PsoConfig cfg;
  cfg.swarm_size = 1;
  CHECK_THROWS_AS(pso_minimize(sphere, lo, hi, cfg), Error);
  cfg = {};
  cfg.self_weight = -1.0;
  CHECK_THROWS_AS(pso_minimize(sphere, lo, hi, cfg), Error);
  cfg = {};
  cfg.min_neighbors_fraction = 0.0;
  CHECK_THROWS_AS(pso_minimize(sphere, lo, hi, cfg), Error);
  CHECK_THROWS_AS(pso_minimize(sphere, hi, lo, PsoConfig{}), Error);
  CHECK_THROWS_AS(pso_minimize(sphere, lo, std::vector<double>{1.0, 2.0}, PsoConfig{}), Error);
}
