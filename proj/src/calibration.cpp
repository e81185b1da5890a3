#include "spm/calibration.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "spm/csv.hpp"
#include "spm/error.hpp"

namespace spm {

namespace {

constexpr std::array<std::string_view, kLambdaSize> kNames{"R_s_n", "R_s_p", "eps_n", "eps_p",
                                                            "D_s_n", "D_s_p", "k0_n",  "k0_p"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::size_t line_no) {
  s = trim(s);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
  }
  return value;
}

bool log_scaled(const ParameterBounds& b, std::size_t i) { return b.upper[i] / b.lower[i] > 100.0; }

double& slot(CellParameters& p, std::size_t i) {
  switch (i) {
    case 0: return p.n.R_s;
    case 1: return p.p.R_s;
    case 2: return p.n.eps;
    case 3: return p.p.eps;
    case 4: return p.n.D_s;
    case 5: return p.p.D_s;
    case 6: return p.n.k0;
    case 7: return p.p.k0;
    default: throw Error(ErrorCode::IndexOutOfRange, "lambda index " + std::to_string(i));
  }
}

}  // namespace

std::string_view lambda_name(std::size_t index) {
  if (index >= kLambdaSize) throw Error(ErrorCode::IndexOutOfRange, "lambda index " + std::to_string(index));
  return kNames[index];
}

std::size_t lambda_index(std::string_view name) {
  const auto it = std::find(kNames.begin(), kNames.end(), name);
  if (it == kNames.end()) throw Error(ErrorCode::InvalidArgument, "unknown parameter '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - kNames.begin());
}

Lambda get_lambda(const CellParameters& params) {
  auto copy = params;
  Lambda out{};
  for (std::size_t i = 0; i < kLambdaSize; ++i) out[i] = slot(copy, i);
  return out;
}

void set_lambda(CellParameters& params, const Lambda& lambda) {
  for (std::size_t i = 0; i < kLambdaSize; ++i) slot(params, i) = lambda[i];
}

void ParameterBounds::validate() const {
  for (std::size_t i = 0; i < kLambdaSize; ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(lower[i] < upper[i])) {
      throw Error(ErrorCode::InvalidArgument, std::string(kNames[i]) + ": bounds must be finite with min < max");
    }
    if (!(lower[i] > 0.0)) throw Error(ErrorCode::NonPositiveValue, std::string(kNames[i]) + " lower bound");
  }
}

ParameterBounds parse_bounds(std::string_view text) {
  ParameterBounds b;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    const auto comma = line.find(',');
    if (eq == std::string_view::npos || comma == std::string_view::npos || comma < eq) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'key = min, max'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto it = std::find(kNames.begin(), kNames.end(), key);
    if (it == kNames.end()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    const auto i = static_cast<std::size_t>(it - kNames.begin());
    b.lower[i] = parse_number(line.substr(eq + 1, comma - eq - 1), line_no);
    b.upper[i] = parse_number(line.substr(comma + 1), line_no);
  }
  b.validate();
  return b;
}

ParameterBounds load_bounds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bounds(ss.str());
}

ReferenceData synthetic_reference(const SimulationSpec& spec) {
  const auto sim = simulate(spec);
  ReferenceData ref;
  ref.voltage = sim.voltage;
  ref.soc.resize(sim.times.size());
  for (std::size_t k = 0; k < sim.times.size(); ++k) ref.soc[k] = 0.5 * (sim.n.soc[k] + sim.p.soc[k]);
  return ref;
}

ReferenceData load_reference(const std::filesystem::path& path, const std::vector<double>& times) {
  const auto table = read_csv(path);
  for (const char* col : {"time_s", "voltage_V"}) {
    if (!table.has_column(col)) throw Error(ErrorCode::MissingKey, path.string() + ": missing column " + col);
  }
  const auto t = table.column("time_s");
  if (t.size() != times.size()) {
    throw Error(ErrorCode::LengthMismatch, "reference has " + std::to_string(t.size()) + " samples, profile has " +
                                               std::to_string(times.size()));
  }
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (std::abs(t[k] - times[k]) > 1e-9) {
      throw Error(ErrorCode::LengthMismatch, "reference time grid differs from the profile at row " +
                                                 std::to_string(k + 1));
    }
  }
  ReferenceData ref;
  ref.voltage = table.column("voltage_V");
  if (table.has_column("soc")) {
    ref.soc = table.column("soc");
  } else if (table.has_column("soc_n") && table.has_column("soc_p")) {
    const auto sn = table.column("soc_n");
    const auto sp = table.column("soc_p");
    ref.soc.resize(sn.size());
    for (std::size_t k = 0; k < sn.size(); ++k) ref.soc[k] = 0.5 * (sn[k] + sp[k]);
  } else {
    throw Error(ErrorCode::MissingKey, path.string() + ": needs a soc column (or soc_n and soc_p)");
  }
  return ref;
}

void CalibrationProblem::validate() const {
  bounds.validate();
  if (std::none_of(free.begin(), free.end(), [](bool f) { return f; })) {
    throw Error(ErrorCode::InvalidArgument, "no free parameters selected");
  }
  const auto n = base.profile.times().size();
  if (reference.voltage.size() != n || reference.soc.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "reference series must be aligned to the profile grid");
  }
}

CalibrationResult calibrate(const CalibrationProblem& problem, const PsoConfig& config) {
  problem.validate();
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < kLambdaSize; ++i) {
    if (problem.free[i]) slots.push_back(i);
  }

  // Search coordinates: log10 for wide boxes, the raw value otherwise.
  std::vector<double> lo, hi;
  for (auto i : slots) {
    const bool lg = log_scaled(problem.bounds, i);
    lo.push_back(lg ? std::log10(problem.bounds.lower[i]) : problem.bounds.lower[i]);
    hi.push_back(lg ? std::log10(problem.bounds.upper[i]) : problem.bounds.upper[i]);
  }
  const Lambda start = get_lambda(problem.base.params);
  auto decode = [&](std::span<const double> z) {
    Lambda lambda = start;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const auto i = slots[k];
      const double v = log_scaled(problem.bounds, i) ? std::pow(10.0, z[k]) : z[k];
      lambda[i] = std::clamp(v, problem.bounds.lower[i], problem.bounds.upper[i]);
    }
    return lambda;
  };
  auto evaluate = [&](const Lambda& lambda) {
    auto spec = problem.base;
    set_lambda(spec.params, lambda);
    return objective_j(simulate(spec), problem.reference.voltage, problem.reference.soc);
  };

  CalibrationResult result;
  result.seed = config.seed;
  result.pso = pso_minimize([&](std::span<const double> z) { return evaluate(decode(z)).total; }, lo, hi, config);
  result.lambda = decode(result.pso.best_point);
  result.terms = evaluate(result.lambda);
  return result;
}

void write_lambda(std::ostream& out, const CalibrationProblem& problem, const CalibrationResult& result) {
  out << "# seed=" << result.seed << " iterations=" << result.pso.iterations
      << " evaluations=" << result.pso.evaluations << '\n';
  out << "# J=" << format_double(result.terms.total) << " J_V=" << format_double(result.terms.voltage)
      << " J_SoCp=" << format_double(result.terms.soc_p) << " J_SoCn=" << format_double(result.terms.soc_n) << '\n';
  out << "parameter,value,lower,upper,free\n";
  for (std::size_t i = 0; i < kLambdaSize; ++i) {
    out << kNames[i] << ',' << format_double(result.lambda[i]) << ',' << format_double(problem.bounds.lower[i])
        << ',' << format_double(problem.bounds.upper[i]) << ',' << (problem.free[i] ? 1 : 0) << '\n';
  }
}

void write_trace(std::ostream& out, const PsoResult& pso) {
  std::vector<double> it(pso.trace.size());
  for (std::size_t k = 0; k < it.size(); ++k) it[k] = static_cast<double>(k);
  write_csv(out, {"iteration", "best_J"}, {it, pso.trace});
}

}  // namespace spm
