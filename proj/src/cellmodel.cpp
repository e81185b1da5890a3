#include "spm/cellmodel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "spm/csv.hpp"
#include "spm/error.hpp"

namespace spm {

double exchange_flux(const CellParameters& params, Electrode e, double c_surf) {
  const auto& el = params.electrode(e);
  const double theta = std::clamp(c_surf / el.c_max, 0.0, 1.0);
  return el.k0 * std::sqrt(params.c_e_avg * theta * (1.0 - theta));
}

double overpotential(const CellParameters& params, Electrode e, double current, double c_surf) {
  const auto& el = params.electrode(e);
  const double theta = c_surf / el.c_max;
  if (!(theta >= kThetaFloor && theta <= 1.0 - kThetaFloor)) {
    throw Error(ErrorCode::DegenerateSurface, std::string(suffix(e)) + " surface stoichiometry " +
                                                  format_double(theta) + " outside the kinetic range");
  }
  const double j0 = exchange_flux(params, e, c_surf);
  const double denom = 2.0 * specific_area(params, e) * params.A_cell * el.L * params.F * j0;
  return 2.0 * params.thermal_voltage() * std::asinh(current * current_sign(e) / denom);
}

double cell_voltage(const CellParameters& params, const OcpCurve& ocp_n, const OcpCurve& ocp_p, double c_surf_n,
                    double c_surf_p, double current) {
  const double eta_n = overpotential(params, Electrode::negative, current, c_surf_n);
  const double eta_p = overpotential(params, Electrode::positive, current, c_surf_p);
  const double u_p = ocp_p.eval(c_surf_p / params.p.c_max).potential;
  const double u_n = ocp_n.eval(c_surf_n / params.n.c_max).potential;
  return u_p - u_n + eta_p - eta_n - params.R_l * current;
}

double soc(const CellParameters& params, Electrode e, double theta_bulk) {
  const auto& el = params.electrode(e);
  if (e == Electrode::positive) return (el.theta_0 - theta_bulk) / (el.theta_0 - el.theta_100);
  return (theta_bulk - el.theta_0) / (el.theta_100 - el.theta_0);
}

double theta_from_soc(const CellParameters& params, Electrode e, double soc_value) {
  const auto& el = params.electrode(e);
  return el.theta_0 + soc_value * (el.theta_100 - el.theta_0);
}

double surface_flux(const CellParameters& params, Electrode e, double current) {
  const auto& el = params.electrode(e);
  return current * current_sign(e) / (specific_area(params, e) * params.A_cell * el.L * params.F);
}

namespace {

struct ElectrodeRun {
  Trajectory trajectory;
  std::vector<double> weights;
  RadialGrid grid;
  double seconds;
};

ElectrodeRun run_electrode(const SimulationSpec& spec, Electrode e) {
  const auto& params = spec.params;
  const auto grid = build_grid(spec.node_count, params.electrode(e).R_s);
  const double c0 = theta_from_soc(params, e, spec.initial_soc) * params.electrode(e).c_max;
  const auto input = spec.profile.as_input();

  LinearOdeProblem problem;
  std::vector<double> weights;
  if (spec.scheme == Scheme::fvm) {
    const auto sys = assemble_fvm(params, e, grid);
    problem = to_ode(sys, input);
    weights = sys.weights;
  } else {
    const auto sys = assemble_cvm(params, e, grid);
    problem = to_ode(sys, input);
    weights = sys.weights;
  }
  const std::vector<double> y0(problem.size(), c0);

  const auto start = std::chrono::steady_clock::now();
  auto trajectory = integrate(problem, spec.integrator, spec.profile.times(), y0);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {std::move(trajectory), std::move(weights), grid, elapsed.count()};
}

}  // namespace

SimulationResult simulate(const SimulationSpec& spec) {
  validate(spec.params);
  if (!(spec.initial_soc >= 0.0 && spec.initial_soc <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "initial SoC must lie in [0, 1]");
  }

  SimulationResult result;
  result.times = spec.profile.times();
  for (double t : result.times) result.current.push_back(spec.profile.at(t));

  for (Electrode e : kElectrodes) {
    auto run = run_electrode(spec, e);
    result.stats += run.trajectory.stats;
    result.integration_seconds += run.seconds;

    const auto& el = spec.params.electrode(e);
    const double particles = el.eps * spec.params.A_cell * el.L / sphere_volume(el.R_s);
    auto& trace = e == Electrode::negative ? result.n : result.p;
    for (std::size_t k = 0; k < result.times.size(); ++k) {
      const auto& state = run.trajectory.states[k];
      double c_surf = state.back();
      if (spec.scheme == Scheme::fvm) {
        c_surf = spec.extrapolation == Extrapolation::hermite
                     ? surface_hermite(state, run.grid, surface_flux(spec.params, e, result.current[k]), el.D_s)
                     : surface_linear(state, run.grid);
      }
      double mass = 0.0;
      for (std::size_t j = 0; j < state.size(); ++j) mass += run.weights[j] * state[j];
      mass *= particles;
      const double theta = bulk_average(state, spec.scheme, run.grid, el.c_max);

      trace.c_surf.push_back(c_surf);
      trace.mass.push_back(mass);
      trace.theta_bulk.push_back(theta);
      trace.soc.push_back(soc(spec.params, e, theta));
    }
    trace.states = std::move(run.trajectory.states);
  }

  for (std::size_t k = 0; k < result.times.size(); ++k) {
    const double current = result.current[k];
    try {
      result.n.eta.push_back(overpotential(spec.params, Electrode::negative, current, result.n.c_surf[k]));
      result.p.eta.push_back(overpotential(spec.params, Electrode::positive, current, result.p.c_surf[k]));
    } catch (const Error& err) {
      throw Error(ErrorCode::DegenerateSurface, "at t = " + format_double(result.times[k]) + " s: " + err.what());
    }
    const double u_p = spec.ocp_p.eval(result.p.c_surf[k] / spec.params.p.c_max).potential;
    const double u_n = spec.ocp_n.eval(result.n.c_surf[k] / spec.params.n.c_max).potential;
    result.voltage.push_back(u_p - u_n + result.p.eta[k] - result.n.eta[k] - spec.params.R_l * current);
  }
  return result;
}

void write_result(std::ostream& out, const SimulationResult& result) {
  write_csv(out,
            {"time_s", "current_A", "voltage_V", "soc_n", "soc_p", "c_surf_n", "c_surf_p", "mass_n_mol",
             "mass_p_mol"},
            {result.times, result.current, result.voltage, result.n.soc, result.p.soc, result.n.c_surf,
             result.p.c_surf, result.n.mass, result.p.mass});
}

}  // namespace spm
