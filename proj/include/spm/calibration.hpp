#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "spm/cellmodel.hpp"
#include "spm/metrics.hpp"
#include "spm/pso.hpp"

namespace spm {

/// Identification vector order: R_s_n, R_s_p, eps_n, eps_p, D_s_n, D_s_p, k0_n, k0_p.
inline constexpr std::size_t kLambdaSize = 8;
using Lambda = std::array<double, kLambdaSize>;
using LambdaMask = std::array<bool, kLambdaSize>;

/// Parameter-file key of each slot ("R_s_n", ..., "k0_p").
std::string_view lambda_name(std::size_t index);
/// Index of a key, or throws InvalidArgument.
std::size_t lambda_index(std::string_view name);

Lambda get_lambda(const CellParameters& params);
void set_lambda(CellParameters& params, const Lambda& lambda);

struct ParameterBounds {
  Lambda lower{1e-6, 1e-6, 0.6, 0.6, 1e-17, 1e-17, 1e-7, 1e-7};
  Lambda upper{1.2e-5, 1.2e-5, 0.8, 0.8, 1e-10, 1e-10, 1e-2, 1e-2};

  void validate() const;
};

/// Lines `key = lower, upper` in SI units; keys not listed keep the
/// defaults. Malformed lines throw ParseError.
ParameterBounds parse_bounds(std::string_view text);
ParameterBounds load_bounds(const std::filesystem::path& path);

struct ReferenceData {
  std::vector<double> voltage;  // [V], on the profile time grid
  std::vector<double> soc;      // [-]
};

/// Reference series produced by the model itself: voltage, plus the mean of
/// the two electrode SoC traces.
ReferenceData synthetic_reference(const SimulationSpec& spec);

/// Reads `time_s,voltage_V,soc` (or soc_n/soc_p columns, averaged). Times
/// must match `times` exactly in count and within 1e-9 s.
ReferenceData load_reference(const std::filesystem::path& path, const std::vector<double>& times);

struct CalibrationProblem {
  SimulationSpec base;
  LambdaMask free{};  // all false by default
  ParameterBounds bounds;
  ReferenceData reference;

  void validate() const;
};

struct CalibrationResult {
  Lambda lambda{};
  ObjectiveTerms terms;
  PsoResult pso;
  std::uint64_t seed = 0;
};

/// PSO over the free slots. Slots whose bounds span more than two decades
/// are searched in log10 space. Failed simulations score +infinity.
CalibrationResult calibrate(const CalibrationProblem& problem, const PsoConfig& config);

/// CSV `parameter,value,lower,upper,free` plus `# J...` comment lines.
void write_lambda(std::ostream& out, const CalibrationProblem& problem, const CalibrationResult& result);
/// CSV `iteration,best_J`.
void write_trace(std::ostream& out, const PsoResult& pso);

}  // namespace spm
