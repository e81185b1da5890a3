#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "spm/tridiagonal.hpp"

namespace spm {

struct IntegratorConfig {
  double abs_tol = 1e-11;
  double rel_tol = 1e-8;
  double initial_step = 0.0;  // 0 selects the step from the initial rate
  double min_step = 0.0;      // floor besides the round-off limit
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 50'000'000;

  /// Throws InvalidArgument when the invariants do not hold.
  void validate() const;
};

/// Scalar input held constant on [times[k], times[k+1]); the last value
/// extends to +infinity and the first to -infinity.
struct PiecewiseConstant {
  std::vector<double> times;
  std::vector<double> values;

  double at(double t) const;
};

/// M dy/dt = K y + b u(t), with M the identity when `mass` is empty.
struct LinearOdeProblem {
  std::optional<Tridiagonal> mass;
  Tridiagonal stiffness;
  std::vector<double> input_gain;
  PiecewiseConstant input;

  std::size_t size() const { return stiffness.size(); }
};

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t factorizations = 0;
  std::size_t linear_solves = 0;

  StepStats& operator+=(const StepStats& other);
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  StepStats stats;
};

/// Adaptive L-stable SDIRK3 integration. States are reported at every entry
/// of `sample_times` (strictly increasing; the first entry is the initial
/// time). Steps never cross a sample time or an input breakpoint.
Trajectory integrate(const LinearOdeProblem& problem, const IntegratorConfig& config,
                     std::span<const double> sample_times, std::span<const double> y0);

}  // namespace spm
