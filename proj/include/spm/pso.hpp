#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace spm {

struct PsoConfig {
  std::size_t swarm_size = 80;
  double self_weight = 2.0;    // pull toward each particle's own best
  double social_weight = 1.0;  // pull toward the neighbourhood best
  double min_neighbors_fraction = 1.0;
  double inertia_min = 0.1;
  double inertia_max = 1.1;
  std::size_t max_iterations = 0;  // 0 selects 200 * dimension
  std::size_t max_stall_iterations = 20;
  double function_tolerance = 1e-6;
  std::uint64_t seed = 0;
  std::size_t workers = 0;  // objective evaluations in flight; 0 = hardware threads

  void validate() const;
};

struct PsoResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  std::vector<double> trace;  // best value after each iteration (index 0 = initial swarm)
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool stalled = false;  // stopped by the stall rule rather than the iteration cap
};

/// Must be safe to call concurrently. Non-finite values and thrown
/// exceptions both count as +infinity.
using Objective = std::function<double(std::span<const double>)>;

/// Global-best particle swarm with adaptive inertia and adaptive
/// neighbourhood size. Positions are clamped to [lower, upper] (the
/// clamped velocity component is zeroed), so the objective is never
/// evaluated outside the box. Identical seed and problem give bit-identical
/// results regardless of `workers`.
PsoResult pso_minimize(const Objective& objective, std::span<const double> lower, std::span<const double> upper,
                       const PsoConfig& config);

}  // namespace spm
