#pragma once

#include <span>
#include <vector>

#include "spm/grid.hpp"
#include "spm/integrator.hpp"
#include "spm/params.hpp"
#include "spm/tridiagonal.hpp"

namespace spm {

enum class Scheme { fvm, cvm };
enum class Extrapolation { linear, hermite };

/// Cell-centred finite volume system dc/dt = A c + B I on the N_r - 1
/// shells [r_j, r_{j+1}]. The state holds shell-average concentrations.
struct FvmSystem {
  Electrode electrode;
  RadialGrid grid;
  Tridiagonal A;                // [1/s]
  std::vector<double> B;        // [mol/m^3 per A s]
  std::vector<double> weights;  // shell volumes [m^3]
  double diffusivity;           // [m^2/s]
  double flux_per_amp;          // outward surface flux per unit current [mol/(m^2 s A)]

  std::size_t size() const { return B.size(); }
};

/// Node-centred control volume system M dc/dt = A N(c, I) on N_r control
/// volumes (half cells at the centre and surface). The last state entry is
/// the surface concentration.
///
/// M and A are divided by the particle volume so both are dimensionless and
/// m^2 per m^3 respectively; the rows of M sum to the control volume
/// fractions, which makes w^T c (w = control volumes) the conserved total.
struct CvmSystem {
  Electrode electrode;
  RadialGrid grid;
  Tridiagonal M;
  Tridiagonal A;                // flux vector -> volume-weighted rate [1/m]
  std::vector<double> weights;  // control volumes [m^3]
  double diffusivity;
  double flux_per_amp;

  std::size_t size() const { return weights.size(); }
};

FvmSystem assemble_fvm(const CellParameters& params, Electrode electrode, const RadialGrid& grid);
CvmSystem assemble_cvm(const CellParameters& params, Electrode electrode, const RadialGrid& grid);

/// dc/dt = A c + B I.
std::vector<double> fvm_rate(const FvmSystem& sys, std::span<const double> state, double current);

/// N = [D (c_{j+1} - c_j)/dr ..., surface flux]; interior entries point inward
/// (up the gradient), the last is the outward surface flux.
std::vector<double> cvm_flux_vector(const CvmSystem& sys, std::span<const double> state, double current);
/// Solves M x = A N(c, I).
std::vector<double> cvm_rate(const CvmSystem& sys, std::span<const double> state, double current);

/// Line through the two outermost cell centres evaluated at R.
double surface_linear(std::span<const double> state, const RadialGrid& grid);

/// Quadratic whose volume averages over the two outermost shells match the
/// state and whose slope at R matches -surface_flux / D.
double surface_hermite(std::span<const double> state, const RadialGrid& grid, double surface_flux,
                       double diffusivity);

/// Volume-weighted mean of the state divided by c_max.
double bulk_average(std::span<const double> state, Scheme scheme, const RadialGrid& grid, double c_max);

/// The systems in the integrator's M y' = K y + b u form. For the CVM,
/// K = A G where G maps the state to the interior face fluxes.
LinearOdeProblem to_ode(const FvmSystem& sys, PiecewiseConstant current);
LinearOdeProblem to_ode(const CvmSystem& sys, PiecewiseConstant current);

/// Shell volumes used as conservation weights for the given scheme.
std::vector<double> volume_weights(Scheme scheme, const RadialGrid& grid);

}  // namespace spm
