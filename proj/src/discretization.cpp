#include "spm/discretization.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "spm/error.hpp"

namespace spm {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double surface_flux_per_amp(const CellParameters& params, Electrode e) {
  const auto& el = params.electrode(e);
  return current_sign(e) / (specific_area(params, e) * params.A_cell * el.L * params.F);
}

// Weight of the neighbouring node in the volume integral of the linear
// interpolant over the half shell adjacent to `node_r`, extending a
// distance h/2 toward the neighbour (direction = +1 outward, -1 inward):
// 4 pi / h * integral_0^{h/2} s (node_r + direction s)^2 ds.
double half_shell_moment(double node_r, double h, double direction) {
  const double s = 0.5 * h;
  const double s2 = s * s;
  return kFourPi / h *
         (node_r * node_r * s2 / 2.0 + direction * 2.0 * node_r * s2 * s / 3.0 + s2 * s2 / 4.0);
}

}  // namespace

FvmSystem assemble_fvm(const CellParameters& params, Electrode electrode, const RadialGrid& grid) {
  const std::size_t cells = grid.node_count() - 1;
  const double D = params.electrode(electrode).D_s;
  const double dr = grid.spacing();

  FvmSystem sys{electrode, grid, Tridiagonal(cells), std::vector<double>(cells, 0.0),
                volume_weights(Scheme::fvm, grid), D, surface_flux_per_amp(params, electrode)};

  // Interior face k+1 (node r_{k+2} in 1-based numbering) couples cells k and k+1.
  for (std::size_t k = 0; k + 1 < cells; ++k) {
    const double conductance = D * shell_area(grid, k + 2) / dr;
    sys.A.upper[k] = conductance / sys.weights[k];
    sys.A.lower[k] = conductance / sys.weights[k + 1];
    sys.A.diag[k] -= sys.A.upper[k];
    sys.A.diag[k + 1] -= sys.A.lower[k];
  }
  sys.B[cells - 1] = -sys.flux_per_amp * shell_area(grid, grid.node_count()) / sys.weights[cells - 1];
  return sys;
}

CvmSystem assemble_cvm(const CellParameters& params, Electrode electrode, const RadialGrid& grid) {
  const std::size_t n = grid.node_count();
  const double D = params.electrode(electrode).D_s;
  const double h = grid.spacing();
  const double scale = 1.0 / sphere_volume(grid.radius());

  CvmSystem sys{electrode, grid, Tridiagonal(n), Tridiagonal(n), volume_weights(Scheme::cvm, grid), D,
                surface_flux_per_amp(params, electrode)};

  // Mass matrix: row k approximates the integral of the piecewise-linear
  // interpolant over control volume k. The two one-sided moments at each
  // face are averaged so M stays symmetric with row sums equal to the
  // control volumes.
  for (std::size_t k = 0; k < n; ++k) sys.M.diag[k] = sys.weights[k] * scale;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double outward = half_shell_moment(grid.nodes()[k], h, +1.0);
    const double inward = half_shell_moment(grid.nodes()[k + 1], h, -1.0);
    const double m = 0.5 * (outward + inward) * scale;
    sys.M.upper[k] = m;
    sys.M.lower[k] = m;
    sys.M.diag[k] -= m;
    sys.M.diag[k + 1] -= m;
  }

  // Flux map: face k+1/2 (flux index k) adds to volume k and removes from k+1;
  // the last flux entry leaves through the particle surface.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double area = shell_area(grid, HalfIndex{k + 1}) * scale;
    sys.A.diag[k] += area;
    sys.A.lower[k] -= area;
  }
  sys.A.diag[n - 1] -= shell_area(grid, n) * scale;
  return sys;
}

std::vector<double> fvm_rate(const FvmSystem& sys, std::span<const double> state, double current) {
  if (state.size() != sys.size()) throw Error(ErrorCode::LengthMismatch, "FVM state length");
  auto rate = sys.A.multiply(state);
  for (std::size_t k = 0; k < rate.size(); ++k) rate[k] += sys.B[k] * current;
  return rate;
}

std::vector<double> cvm_flux_vector(const CvmSystem& sys, std::span<const double> state, double current) {
  const std::size_t n = sys.size();
  if (state.size() != n) throw Error(ErrorCode::LengthMismatch, "CVM state length");
  std::vector<double> flux(n);
  const double g = sys.diffusivity / sys.grid.spacing();
  for (std::size_t k = 0; k + 1 < n; ++k) flux[k] = g * (state[k + 1] - state[k]);
  flux[n - 1] = sys.flux_per_amp * current;
  return flux;
}

std::vector<double> cvm_rate(const CvmSystem& sys, std::span<const double> state, double current) {
  auto rate = sys.A.multiply(cvm_flux_vector(sys, state, current));
  TridiagonalLu(sys.M).solve_in_place(rate);
  return rate;
}

double surface_linear(std::span<const double> state, const RadialGrid& grid) {
  if (grid.node_count() < 3 || state.size() != grid.node_count() - 1) {
    throw Error(ErrorCode::LengthMismatch, "FVM state length");
  }
  const double last = state[state.size() - 1];
  const double prev = state[state.size() - 2];
  return 1.5 * last - 0.5 * prev;
}

double surface_hermite(std::span<const double> state, const RadialGrid& grid, double surface_flux,
                       double diffusivity) {
  if (grid.node_count() < 3 || state.size() != grid.node_count() - 1) {
    throw Error(ErrorCode::LengthMismatch, "FVM state length");
  }
  if (!(diffusivity > 0.0)) throw Error(ErrorCode::NonPositiveValue, "diffusivity");

  // Work in s = r/R - 1 so the surface sits at s = 0. The quadratic is
  // p(s) = c_surf + slope s + curv s^2 and the shell averages weight by r^2.
  // Three-point Gauss-Legendre is exact for the degree-4 integrands.
  static constexpr std::array<double, 3> gauss_x{-0.7745966692414834, 0.0, 0.7745966692414834};
  static constexpr std::array<double, 3> gauss_w{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  auto moments = [](double a, double b) {
    double volume = 0.0, first = 0.0, second = 0.0;
    for (std::size_t q = 0; q < 3; ++q) {
      const double s = 0.5 * (a + b) + 0.5 * (b - a) * gauss_x[q];
      const double x = 1.0 + s;
      const double w = gauss_w[q] * x * x;
      volume += w;
      first += w * s;
      second += w * s * s;
    }
    return std::array<double, 2>{first / volume, second / volume};
  };

  const double R = grid.radius();
  const std::size_t n = grid.node_count();
  const double s_outer_inner = grid.nodes()[n - 2] / R - 1.0;
  const double s_prev_inner = grid.nodes()[n - 3] / R - 1.0;
  const auto last_m = moments(s_outer_inner, 0.0);
  const auto prev_m = moments(s_prev_inner, s_outer_inner);

  const double slope = -surface_flux / diffusivity * R;
  const double det = last_m[1] - prev_m[1];
  if (!(std::abs(det) > 64.0 * std::numeric_limits<double>::epsilon() * std::abs(last_m[1]))) {
    throw Error(ErrorCode::SingularFit, "surface fit constraints are degenerate");
  }
  const double last = state[state.size() - 1];
  const double prev = state[state.size() - 2];
  const double curvature = ((last - prev) - slope * (last_m[0] - prev_m[0])) / det;
  return last - slope * last_m[0] - curvature * last_m[1];
}

LinearOdeProblem to_ode(const FvmSystem& sys, PiecewiseConstant current) {
  return {std::nullopt, sys.A, sys.B, std::move(current)};
}

LinearOdeProblem to_ode(const CvmSystem& sys, PiecewiseConstant current) {
  const std::size_t n = sys.size();
  const double g = sys.diffusivity / sys.grid.spacing();
  Tridiagonal K(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Face above node k contributes only for interior faces.
    if (k + 1 < n) {
      K.diag[k] -= sys.A.diag[k] * g;
      K.upper[k] += sys.A.diag[k] * g;
    }
    if (k > 0) {
      K.lower[k - 1] -= sys.A.lower[k - 1] * g;
      K.diag[k] += sys.A.lower[k - 1] * g;
    }
  }
  std::vector<double> b(n, 0.0);
  b[n - 1] = sys.A.diag[n - 1] * sys.flux_per_amp;
  return {sys.M, std::move(K), std::move(b), std::move(current)};
}

std::vector<double> volume_weights(Scheme scheme, const RadialGrid& grid) {
  std::vector<double> w;
  if (scheme == Scheme::fvm) {
    for (std::size_t j = 1; j < grid.node_count(); ++j) w.push_back(fv_shell_volume(grid, j));
  } else {
    for (std::size_t j = 1; j <= grid.node_count(); ++j) w.push_back(cv_shell_volume(grid, j));
  }
  return w;
}

double bulk_average(std::span<const double> state, Scheme scheme, const RadialGrid& grid, double c_max) {
  const auto w = volume_weights(scheme, grid);
  if (state.size() != w.size()) throw Error(ErrorCode::LengthMismatch, "state length does not match scheme");
  double mass = 0.0, volume = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    mass += w[k] * state[k];
    volume += w[k];
  }
  return mass / volume / c_max;
}

}  // namespace spm
