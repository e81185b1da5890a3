#pragma once

#include <iosfwd>
#include <vector>

#include "spm/discretization.hpp"
#include "spm/integrator.hpp"
#include "spm/ocp.hpp"
#include "spm/params.hpp"
#include "spm/profile.hpp"

namespace spm {

/// Stoichiometries outside [kThetaFloor, 1 - kThetaFloor] are treated as a
/// saturated surface.
inline constexpr double kThetaFloor = 1e-6;

struct SimulationSpec {
  CellParameters params;
  OcpCurve ocp_n = synthetic_ocp(Electrode::negative);
  OcpCurve ocp_p = synthetic_ocp(Electrode::positive);
  Scheme scheme = Scheme::fvm;
  Extrapolation extrapolation = Extrapolation::hermite;  // FVM only
  std::size_t node_count = 101;
  CurrentProfile profile = constant_current(0.0, 1.0);
  double initial_soc = 1.0;
  IntegratorConfig integrator;
};

struct ElectrodeTrace {
  std::vector<std::vector<double>> states;
  std::vector<double> c_surf;      // [mol/m^3]
  std::vector<double> theta_bulk;  // [-]
  std::vector<double> eta;         // [V]
  std::vector<double> soc;         // [-]
  std::vector<double> mass;        // lithium in the whole electrode [mol]
};

struct SimulationResult {
  std::vector<double> times;
  std::vector<double> current;
  std::vector<double> voltage;
  ElectrodeTrace n;
  ElectrodeTrace p;
  StepStats stats;
  double integration_seconds = 0.0;  // wall time inside integrate() only

  const ElectrodeTrace& electrode(Electrode e) const { return e == Electrode::negative ? n : p; }
};

/// j0 = k0 sqrt(c_e (c/c_max)(1 - c/c_max)), with c/c_max clamped to [0, 1].
double exchange_flux(const CellParameters& params, Electrode e, double c_surf);

/// 2 V_th asinh(I g / (2 a_s A L F j0)). Throws DegenerateSurface when the
/// surface stoichiometry leaves [kThetaFloor, 1 - kThetaFloor].
double overpotential(const CellParameters& params, Electrode e, double current, double c_surf);

/// U_p - U_n + eta_p - eta_n - R_l I.
double cell_voltage(const CellParameters& params, const OcpCurve& ocp_n, const OcpCurve& ocp_p, double c_surf_n,
                    double c_surf_p, double current);

/// Affine map from bulk stoichiometry to electrode state of charge (not clamped).
double soc(const CellParameters& params, Electrode e, double theta_bulk);
/// Inverse of soc().
double theta_from_soc(const CellParameters& params, Electrode e, double soc_value);

/// Outward surface flux for the given current [mol/(m^2 s)].
double surface_flux(const CellParameters& params, Electrode e, double current);

/// Runs both electrodes over the profile; outputs are sampled on the
/// profile's time stamps. Errors: IntegrationFailure-class codes from the
/// integrator, DegenerateSurface (message carries the time).
SimulationResult simulate(const SimulationSpec& spec);

/// CSV columns: time_s, current_A, voltage_V, soc_n, soc_p, c_surf_n,
/// c_surf_p, mass_n_mol, mass_p_mol.
void write_result(std::ostream& out, const SimulationResult& result);

}  // namespace spm
