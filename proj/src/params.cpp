#include "spm/params.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "spm/error.hpp"

namespace spm {

namespace {

enum class Dim { none, length, area, diffusivity, concentration, rate_constant, resistance, temperature, faraday, gas };

struct Unit {
  Dim dim;
  double to_si;
};

const std::map<std::string, Unit, std::less<>>& unit_table() {
  static const std::map<std::string, Unit, std::less<>> table{
      {"", {Dim::none, 1.0}},
      {"-", {Dim::none, 1.0}},
      {"m", {Dim::length, 1.0}},
      {"cm", {Dim::length, 1e-2}},
      {"mm", {Dim::length, 1e-3}},
      {"um", {Dim::length, 1e-6}},
      {"µm", {Dim::length, 1e-6}},
      {"m^2", {Dim::area, 1.0}},
      {"cm^2", {Dim::area, 1e-4}},
      {"mm^2", {Dim::area, 1e-6}},
      {"m^2/s", {Dim::diffusivity, 1.0}},
      {"cm^2/s", {Dim::diffusivity, 1e-4}},
      {"um^2/s", {Dim::diffusivity, 1e-12}},
      {"µm^2/s", {Dim::diffusivity, 1e-12}},
      {"mol/m^3", {Dim::concentration, 1.0}},
      {"mol/(m^2*s)", {Dim::rate_constant, 1.0}},
      {"mmol/(m^2*s)", {Dim::rate_constant, 1e-3}},
      {"Ohm", {Dim::resistance, 1.0}},
      {"mOhm", {Dim::resistance, 1e-3}},
      {"K", {Dim::temperature, 1.0}},
      {"C/mol", {Dim::faraday, 1.0}},
      {"J/(mol*K)", {Dim::gas, 1.0}},
  };
  return table;
}

struct KeySpec {
  std::string name;
  Dim dim;
  bool required;
  std::function<double&(CellParameters&)> field;
};

std::vector<KeySpec> key_specs() {
  std::vector<KeySpec> keys;
  for (Electrode e : kElectrodes) {
    auto s = std::string(suffix(e));
    auto el = [e](CellParameters& p) -> ElectrodeParams& { return p.electrode(e); };
    keys.push_back({"R_s_" + s, Dim::length, true, [el](CellParameters& p) -> double& { return el(p).R_s; }});
    keys.push_back({"eps_" + s, Dim::none, true, [el](CellParameters& p) -> double& { return el(p).eps; }});
    keys.push_back({"D_s_" + s, Dim::diffusivity, true, [el](CellParameters& p) -> double& { return el(p).D_s; }});
    keys.push_back({"k0_" + s, Dim::rate_constant, true, [el](CellParameters& p) -> double& { return el(p).k0; }});
    keys.push_back({"c_max_" + s, Dim::concentration, true, [el](CellParameters& p) -> double& { return el(p).c_max; }});
    keys.push_back({"theta_" + s + "_0", Dim::none, true, [el](CellParameters& p) -> double& { return el(p).theta_0; }});
    keys.push_back({"theta_" + s + "_100", Dim::none, true, [el](CellParameters& p) -> double& { return el(p).theta_100; }});
    keys.push_back({"L_" + s, Dim::length, true, [el](CellParameters& p) -> double& { return el(p).L; }});
  }
  keys.push_back({"c_e_avg", Dim::concentration, true, [](CellParameters& p) -> double& { return p.c_e_avg; }});
  keys.push_back({"A_cell", Dim::area, true, [](CellParameters& p) -> double& { return p.A_cell; }});
  keys.push_back({"R_l", Dim::resistance, true, [](CellParameters& p) -> double& { return p.R_l; }});
  keys.push_back({"T", Dim::temperature, false, [](CellParameters& p) -> double& { return p.T; }});
  keys.push_back({"F", Dim::faraday, false, [](CellParameters& p) -> double& { return p.F; }});
  keys.push_back({"R_gas", Dim::gas, false, [](CellParameters& p) -> double& { return p.R_gas; }});
  return keys;
}

std::string_view si_unit(Dim dim) {
  switch (dim) {
    case Dim::none: return "";
    case Dim::length: return "m";
    case Dim::area: return "m^2";
    case Dim::diffusivity: return "m^2/s";
    case Dim::concentration: return "mol/m^3";
    case Dim::rate_constant: return "mol/(m^2*s)";
    case Dim::resistance: return "Ohm";
    case Dim::temperature: return "K";
    case Dim::faraday: return "C/mol";
    case Dim::gas: return "J/(mol*K)";
  }
  return "";
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void require_positive(double value, std::string_view name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::NonPositiveValue, std::string(name) + " must be positive and finite");
  }
}

}  // namespace

std::string_view suffix(Electrode e) { return e == Electrode::negative ? "n" : "p"; }

void validate(const CellParameters& params) {
  for (Electrode e : kElectrodes) {
    const auto& el = params.electrode(e);
    const std::string s(suffix(e));
    require_positive(el.R_s, "R_s_" + s);
    require_positive(el.D_s, "D_s_" + s);
    require_positive(el.k0, "k0_" + s);
    require_positive(el.c_max, "c_max_" + s);
    require_positive(el.L, "L_" + s);
    require_positive(el.eps, "eps_" + s);
    if (!(el.eps < 1.0)) {
      throw Error(ErrorCode::StoichiometryOrderViolation, "eps_" + s + " must lie in (0, 1)");
    }
  }
  require_positive(params.c_e_avg, "c_e_avg");
  require_positive(params.A_cell, "A_cell");
  require_positive(params.R_l, "R_l");
  require_positive(params.T, "T");
  require_positive(params.F, "F");
  require_positive(params.R_gas, "R_gas");

  const auto& n = params.n;
  if (!(0.0 < n.theta_0 && n.theta_0 < n.theta_100 && n.theta_100 < 1.0)) {
    throw Error(ErrorCode::StoichiometryOrderViolation, "need 0 < theta_n_0 < theta_n_100 < 1");
  }
  const auto& p = params.p;
  if (!(0.0 < p.theta_100 && p.theta_100 < p.theta_0 && p.theta_0 < 1.0)) {
    throw Error(ErrorCode::StoichiometryOrderViolation, "need 0 < theta_p_100 < theta_p_0 < 1");
  }
}

double specific_area(const CellParameters& params, Electrode e) {
  const auto& el = params.electrode(e);
  return 3.0 * el.eps / el.R_s;
}

double electrode_capacity(const CellParameters& params, Electrode e) {
  const auto& el = params.electrode(e);
  return el.eps * params.A_cell * el.L * params.F * el.c_max * std::abs(el.theta_100 - el.theta_0);
}

double one_c_current(const CellParameters& params) {
  return std::min(electrode_capacity(params, Electrode::negative),
                  electrode_capacity(params, Electrode::positive)) /
         3600.0;
}

CellParameters parse_parameters(std::string_view text) {
  std::map<std::string, std::pair<double, std::string>, std::less<>> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto rhs = trim(line.substr(eq + 1));
    double value{};
    const auto [ptr, ec] = std::from_chars(rhs.data(), rhs.data() + rhs.size(), value);
    if (ec != std::errc{} || key.empty()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad value for '" +
                                             std::string(key) + "'");
    }
    const auto unit = trim(std::string_view(ptr, rhs.data() + rhs.size() - ptr));
    if (!entries.emplace(std::string(key), std::pair{value, std::string(unit)}).second) {
      throw Error(ErrorCode::ParseError, "duplicate key '" + std::string(key) + "'");
    }
  }

  CellParameters params;
  for (const auto& spec : key_specs()) {
    const auto it = entries.find(spec.name);
    if (it == entries.end()) {
      if (spec.required) throw Error(ErrorCode::MissingKey, spec.name);
      continue;
    }
    const auto& [value, unit_name] = it->second;
    const auto unit = unit_table().find(unit_name);
    if (unit == unit_table().end() || (unit->second.dim != spec.dim && !unit_name.empty())) {
      throw Error(ErrorCode::UnknownUnit, "'" + unit_name + "' for " + spec.name);
    }
    spec.field(params) = value * unit->second.to_si;
    entries.erase(it);
  }
  if (!entries.empty()) {
    throw Error(ErrorCode::ParseError, "unknown key '" + entries.begin()->first + "'");
  }
  validate(params);
  return params;
}

CellParameters load_parameters(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_parameters(buffer.str());
}

void write_parameters(std::ostream& out, const CellParameters& params) {
  auto copy = params;
  char value[64];
  for (const auto& spec : key_specs()) {
    std::snprintf(value, sizeof value, "%.17g", spec.field(copy));
    out << spec.name << " = " << value;
    if (const auto unit = si_unit(spec.dim); !unit.empty()) out << ' ' << unit;
    out << '\n';
  }
}

std::string format_parameters(const CellParameters& params) {
  std::ostringstream out;
  write_parameters(out, params);
  return out.str();
}

namespace {

CellParameters lg_m50t_borrowed() {
  CellParameters p;
  p.n.theta_100 = 0.9343;
  p.p.theta_100 = 0.2711;
  p.n.theta_0 = 0.0204;
  p.p.theta_0 = 0.8536;
  p.n.c_max = 29583.0;
  p.p.c_max = 51765.0;
  p.c_e_avg = 1000.0;
  p.n.L = 85.2e-6;
  p.p.L = 75.6e-6;
  p.A_cell = 1126.7e-4;
  p.R_l = 29e-3;
  return p;
}

}  // namespace

CellParameters lg_m50t_fvm() {
  auto p = lg_m50t_borrowed();
  p.n.R_s = 10.70e-6;
  p.p.R_s = 12e-6;
  p.n.eps = 0.76;
  p.p.eps = 0.77;
  p.n.D_s = 0.17e-12;
  p.p.D_s = 8.19e-3 * 1e-12;
  p.n.k0 = 6.95e-6 * 1e-3;
  p.p.k0 = 2.11 * 1e-3;
  return p;
}

CellParameters lg_m50t_cvm() {
  auto p = lg_m50t_borrowed();
  p.n.R_s = 2.87e-6;
  p.p.R_s = 6.31e-6;
  p.n.eps = 0.76;
  p.p.eps = 0.77;
  p.n.D_s = 8.19e-3 * 1e-12;
  p.p.D_s = 2.13e-3 * 1e-12;
  p.n.k0 = 3.06e-3 * 1e-3;
  p.p.k0 = 3.39 * 1e-3;
  return p;
}

}  // namespace spm
