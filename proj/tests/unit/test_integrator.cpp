#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spm/discretization.hpp"
#include "spm/error.hpp"
#include "spm/integrator.hpp"

using namespace spm;

namespace {

LinearOdeProblem scalar_decay(double mass, double k) {
  LinearOdeProblem p;
  if (mass != 1.0) {
    Tridiagonal m(1);
    m.diag[0] = mass;
    p.mass = m;
  }
  p.stiffness = Tridiagonal(1);
  p.stiffness.diag[0] = k;
  p.input_gain = {0.0};
  p.input = {{0.0}, {0.0}};
  return p;
}

LinearOdeProblem stiff_pair() {
  // Symmetric 2x2 with eigenvalues -1 and -1e6.
  LinearOdeProblem p;
  p.stiffness = Tridiagonal(2);
  p.stiffness.diag = {-500000.5, -500000.5};
  p.stiffness.lower = {499999.5};
  p.stiffness.upper = {499999.5};
  p.input_gain = {0.0, 0.0};
  p.input = {{0.0}, {0.0}};
  return p;
}

double exp_error(double rel_tol) {
  IntegratorConfig cfg;
  cfg.rel_tol = rel_tol;
  cfg.abs_tol = rel_tol * 1e-3;
  const std::vector<double> t{0.0, 1.0};
  const auto traj = integrate(scalar_decay(1.0, -1.0), cfg, t, std::vector<double>{1.0});
  return std::abs(traj.states[1][0] - std::exp(-1.0)) / std::exp(-1.0);
}

}  // namespace

TEST_CASE("exponential decay") {
  IntegratorConfig cfg;
  const std::vector<double> t{0.0, 1.0};
  const auto traj = integrate(scalar_decay(1.0, -1.0), cfg, t, std::vector<double>{1.0});
  REQUIRE(traj.states.size() == 2);
  CHECK(traj.states[0][0] == 1.0);
  CHECK(std::abs(traj.states[1][0] - std::exp(-1.0)) <= 10 * cfg.rel_tol * std::exp(-1.0));
  CHECK(traj.stats.accepted > 0);
  CHECK(traj.stats.linear_solves >= 3 * traj.stats.accepted);
}

TEST_CASE("mass form matches the explicit form") {
  IntegratorConfig cfg;
  const std::vector<double> t{0.0, 0.5, 1.0};
  const auto plain = integrate(scalar_decay(1.0, -1.0), cfg, t, std::vector<double>{1.0});
  const auto massed = integrate(scalar_decay(2.0, -2.0), cfg, t, std::vector<double>{1.0});
  for (std::size_t k = 0; k < t.size(); ++k) {
    CHECK(massed.states[k][0] == doctest::Approx(plain.states[k][0]).epsilon(10 * cfg.rel_tol));
  }
}

TEST_CASE("stiff pair against the matrix exponential") {
  IntegratorConfig cfg;
  std::vector<double> t;
  for (int k = 0; k <= 20; ++k) t.push_back(0.05 * k);
  const std::vector<double> y0{1.0, 0.0};
  const auto traj = integrate(stiff_pair(), cfg, t, y0);
  const std::array<double, 4> a{-500000.5, 499999.5, 499999.5, -500000.5};
  for (std::size_t k = 1; k < t.size(); ++k) {
    const auto e = oracle::expm2(a, t[k]);
    const double exact0 = e[0] * y0[0] + e[1] * y0[1];
    const double exact1 = e[2] * y0[0] + e[3] * y0[1];
    CHECK(std::abs(traj.states[k][0] - exact0) <= 100 * cfg.rel_tol * std::abs(exact0));
    CHECK(std::abs(traj.states[k][1] - exact1) <= 100 * cfg.rel_tol * std::abs(exact1));
  }
}

TEST_CASE("tightening tolerances reduces the error monotonically") {
  double previous = exp_error(1e-3);
  for (double tol : {1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9}) {
    const double err = exp_error(tol);
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("step input matches the closed form") {
  // y' = -2 y + u, u = 3 on [0, 1), 0 afterwards.
  LinearOdeProblem p = scalar_decay(1.0, -2.0);
  p.input_gain = {1.0};
  p.input = {{0.0, 1.0}, {3.0, 0.0}};
  IntegratorConfig cfg;
  const std::vector<double> t{0.0, 0.5, 1.0, 2.0};
  const auto traj = integrate(p, cfg, t, std::vector<double>{0.0});
  auto on = [](double s) { return 1.5 * (1.0 - std::exp(-2.0 * s)); };
  CHECK(traj.states[1][0] == doctest::Approx(on(0.5)).epsilon(1e-7));
  CHECK(traj.states[2][0] == doctest::Approx(on(1.0)).epsilon(1e-7));
  CHECK(traj.states[3][0] == doctest::Approx(on(1.0) * std::exp(-2.0)).epsilon(1e-7));
}

TEST_CASE("piecewise-constant input is right-continuous") {
  const PiecewiseConstant u{{0.0, 10.0, 20.0}, {1.0, 2.0, 3.0}};
  CHECK(u.at(-5.0) == 1.0);
  CHECK(u.at(0.0) == 1.0);
  CHECK(u.at(9.999) == 1.0);
  CHECK(u.at(10.0) == 2.0);
  CHECK(u.at(25.0) == 3.0);
}

TEST_CASE("conservative system drifts less than steps times abs_tol") {
  const auto p = lg_m50t_cvm();
  const auto grid = build_grid(41, p.n.R_s);
  const auto fvm = assemble_fvm(p, Electrode::negative, grid);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(1e4, 2e4);
  std::vector<double> y0(fvm.size());
  for (auto& v : y0) v = u(rng);
  IntegratorConfig cfg;
  std::vector<double> t;
  for (int k = 0; k <= 50; ++k) t.push_back(20.0 * k);
  const auto traj = integrate(to_ode(fvm, {{0.0}, {0.0}}), cfg, t, y0);
  double w0 = 0, vol = 0;
  for (std::size_t j = 0; j < y0.size(); ++j) {
    w0 += fvm.weights[j] * y0[j];
    vol += fvm.weights[j];
  }
  for (const auto& y : traj.states) {
    double w = 0;
    for (std::size_t j = 0; j < y.size(); ++j) w += fvm.weights[j] * y[j];
    CHECK(std::abs(w - w0) / vol <= static_cast<double>(traj.stats.accepted) * cfg.abs_tol);
  }
}

TEST_CASE("samples are reported exactly at the requested times") {
  const std::vector<double> t{0.0, 0.1, 0.37, 2.0};
  const auto traj = integrate(scalar_decay(1.0, -1.0), IntegratorConfig{}, t, std::vector<double>{1.0});
  CHECK(traj.times == t);
}

TEST_CASE("identical inputs give identical trajectories") {
  const std::vector<double> t{0.0, 0.3, 1.0};
  const auto a = integrate(stiff_pair(), IntegratorConfig{}, t, std::vector<double>{1.0, -1.0});
  const auto b = integrate(stiff_pair(), IntegratorConfig{}, t, std::vector<double>{1.0, -1.0});
  CHECK(a.states == b.states);
  CHECK(a.stats.accepted == b.stats.accepted);
}

TEST_CASE("configuration and argument errors") {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  const auto p = scalar_decay(1.0, -1.0);
  const std::vector<double> t{0.0, 1.0};
  const std::vector<double> y0{1.0};

  IntegratorConfig bad;
  bad.rel_tol = 1.5;
  CHECK(code([&] { integrate(p, bad, t, y0); }) == ErrorCode::InvalidArgument);
  bad = {};
  bad.abs_tol = 0.0;
  CHECK(code([&] { integrate(p, bad, t, y0); }) == ErrorCode::InvalidArgument);

  IntegratorConfig few;
  few.max_steps = 3;
  CHECK(code([&] { integrate(p, few, t, y0); }) == ErrorCode::MaxStepsExceeded);

  IntegratorConfig floor;
  floor.min_step = 0.4;
  floor.initial_step = 0.5;
  floor.rel_tol = 1e-12;
  CHECK(code([&] { integrate(p, floor, t, y0); }) == ErrorCode::StepSizeUnderflow);

  CHECK(code([&] { integrate(p, IntegratorConfig{}, std::vector<double>{0.0, 0.0}, y0); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code([&] { integrate(p, IntegratorConfig{}, t, std::vector<double>{1.0, 2.0}); }) ==
        ErrorCode::LengthMismatch);
}
