#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace spm {

enum class Electrode { negative, positive };

constexpr std::array<Electrode, 2> kElectrodes{Electrode::negative, Electrode::positive};

/// Suffix used in parameter keys and CSV columns ("n" or "p").
std::string_view suffix(Electrode e);

/// Sign of the boundary flux per unit applied current: +1 for the negative
/// electrode, -1 for the positive one. Positive current is discharge.
constexpr double current_sign(Electrode e) { return e == Electrode::negative ? 1.0 : -1.0; }

struct ElectrodeParams {
  double R_s{};         // particle radius [m]
  double eps{};         // active material volume fraction [-]
  double D_s{};         // solid diffusivity [m^2/s]
  double k0{};          // kinetic rate constant [mol/(m^2 s) per (mol/m^3)^(1/2)]
  double c_max{};       // [mol/m^3]
  double theta_0{};     // stoichiometry at 0% SoC
  double theta_100{};   // stoichiometry at 100% SoC
  double L{};           // electrode thickness [m]
};

/// All model constants in SI units. Immutable once validated; copies are
/// cheap and safe to hand to concurrent simulations.
struct CellParameters {
  ElectrodeParams n;
  ElectrodeParams p;
  double c_e_avg{};  // [mol/m^3]
  double A_cell{};   // [m^2]
  double R_l{};      // [Ohm]
  double T{298.15};  // [K]
  double F{96485.33212};
  double R_gas{8.314462618};

  const ElectrodeParams& electrode(Electrode e) const { return e == Electrode::negative ? n : p; }
  ElectrodeParams& electrode(Electrode e) { return e == Electrode::negative ? n : p; }

  double thermal_voltage() const { return R_gas * T / F; }
};

/// Throws spm::Error (NonPositiveValue, StoichiometryOrderViolation) on the
/// first broken invariant.
void validate(const CellParameters& params);

/// a_s = 3 eps / R_s.
double specific_area(const CellParameters& params, Electrode e);

/// Theoretical electrode capacity between its 0% and 100% stoichiometries [C].
double electrode_capacity(const CellParameters& params, Electrode e);

/// Current [A] that moves the smaller electrode window in one hour.
double one_c_current(const CellParameters& params);

/// Flat `key = value [unit]` text. Units are converted to SI at load.
CellParameters parse_parameters(std::string_view text);
CellParameters load_parameters(const std::filesystem::path& path);

/// Writes every key in SI with round-trip precision.
void write_parameters(std::ostream& out, const CellParameters& params);
std::string format_parameters(const CellParameters& params);

/// Borrowed cell constants plus the FVM- or CVM-calibrated particle values.
CellParameters lg_m50t_fvm();
CellParameters lg_m50t_cvm();

}  // namespace spm
