#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "spm/error.hpp"
#include "spm/tridiagonal.hpp"

using namespace spm;
using V = std::vector<double>;

TEST_CASE("identity solve returns the right-hand side") {
  const std::vector<double> b{1.5, -2.0, 3.25, 0.0};
  const auto x = tridiag_solve(std::vector<double>(3, 0.0), std::vector<double>(4, 1.0), std::vector<double>(3, 0.0), b);
  CHECK(x == b);
}

TEST_CASE("hand-eliminated 3x3") {
  const auto x = tridiag_solve(V{-1, -1}, V{2, 2, 2}, V{-1, -1}, V{1, 0, 1});
  for (double v : x) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("zero pivot") {
  try {
    tridiag_solve(V{1.0}, V{0.0, 1.0}, V{1.0}, V{1.0, 1.0});
    FAIL("expected ZeroPivot");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroPivot);
  }
  // Singular after one elimination step: [[1,1],[1,1]].
  CHECK_THROWS_AS(tridiag_solve(V{1.0}, V{1.0, 1.0}, V{1.0}, V{1.0, 2.0}), Error);
}

TEST_CASE("residual bound on random diagonally dominant systems") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int draw = 0; draw < 200; ++draw) {
    const std::size_t n = 3 + draw % 120;
    Tridiagonal a(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      a.lower[k] = u(rng);
      a.upper[k] = u(rng);
    }
    for (std::size_t k = 0; k < n; ++k) a.diag[k] = 2.5 + u(rng);
    std::vector<double> b(n);
    for (auto& v : b) v = u(rng) * 1e3;

    auto x = b;
    TridiagonalLu(a).solve_in_place(x);
    const auto ax = a.multiply(x);
    double res = 0, xnorm = 0, bnorm = 0;
    for (std::size_t k = 0; k < n; ++k) {
      res = std::max(res, std::abs(ax[k] - b[k]));
      xnorm = std::max(xnorm, std::abs(x[k]));
      bnorm = std::max(bnorm, std::abs(b[k]));
    }
    CHECK(res <= 1e-12 * (a.norm_inf() * xnorm + bnorm));
  }
}

TEST_CASE("combine, at and norm") {
  const auto i3 = Tridiagonal::identity(3);
  Tridiagonal a(3);
  a.lower = {1, 2};
  a.diag = {3, 4, 5};
  a.upper = {6, 7};
  const auto c = Tridiagonal::combine(2.0, i3, -1.0, a);
  CHECK(c.at(0, 0) == -1.0);
  CHECK(c.at(1, 0) == -1.0);
  CHECK(c.at(0, 1) == -6.0);
  CHECK(c.at(0, 2) == 0.0);
  CHECK(a.norm_inf() == 1.0 + 4.0 + 7.0);
  CHECK_THROWS_AS(Tridiagonal::combine(1.0, i3, 1.0, Tridiagonal::identity(4)), Error);
}

TEST_CASE("solve leaves the factored matrix reusable") {
  Tridiagonal a(4);
  a.lower = {-1, -1, -1};
  a.diag = {4, 4, 4, 4};
  a.upper = {-1, -1, -1};
  const TridiagonalLu lu(a);
  std::vector<double> x1{1, 2, 3, 4}, x2{1, 2, 3, 4};
  lu.solve_in_place(x1);
  lu.solve_in_place(x2);
  CHECK(x1 == x2);
  std::vector<double> wrong(3);
  CHECK_THROWS_AS(lu.solve_in_place(wrong), Error);
}
