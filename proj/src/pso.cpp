#include "spm/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "spm/error.hpp"
#include "spm/parallel.hpp"

namespace spm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void evaluate_all(const Objective& objective, const std::vector<std::vector<double>>& points,
                  std::vector<double>& values, std::size_t workers) {
  parallel_for(
      points.size(),
      [&](std::size_t i) {
        double v = kInf;
        try {
          v = objective(points[i]);
        } catch (...) {
          v = kInf;
        }
        values[i] = std::isfinite(v) ? v : kInf;
      },
      workers);
}

}  // namespace

void PsoConfig::validate() const {
  if (swarm_size < 2) throw Error(ErrorCode::InvalidArgument, "swarm size must be at least 2");
  if (!(self_weight >= 0.0) || !(social_weight >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "adjustment weights must be non-negative");
  }
  if (!(min_neighbors_fraction > 0.0 && min_neighbors_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "min neighbours fraction must lie in (0, 1]");
  }
  if (!(inertia_min > 0.0 && inertia_min <= inertia_max)) throw Error(ErrorCode::InvalidArgument, "inertia range");
  if (!(function_tolerance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "function tolerance");
}

PsoResult pso_minimize(const Objective& objective, std::span<const double> lower, std::span<const double> upper,
                       const PsoConfig& config) {
  config.validate();
  const std::size_t dim = lower.size();
  if (dim == 0 || upper.size() != dim) throw Error(ErrorCode::LengthMismatch, "bounds");
  for (std::size_t d = 0; d < dim; ++d) {
    if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]) || !(lower[d] < upper[d])) {
      throw Error(ErrorCode::InvalidArgument, "bounds must be finite with lower < upper");
    }
  }
  const std::size_t swarm = config.swarm_size;
  const std::size_t max_iterations = config.max_iterations ? config.max_iterations : 200 * dim;
  const auto min_neighbors = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(static_cast<double>(swarm) * config.min_neighbors_fraction)));

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::vector<double>> x(swarm, std::vector<double>(dim));
  std::vector<std::vector<double>> v(swarm, std::vector<double>(dim));
  for (std::size_t i = 0; i < swarm; ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      const double range = upper[d] - lower[d];
      x[i][d] = lower[d] + range * unit(rng);
      v[i][d] = range * (2.0 * unit(rng) - 1.0);
    }
  }

  std::vector<double> f(swarm);
  evaluate_all(objective, x, f, config.workers);
  PsoResult result;
  result.evaluations = swarm;

  auto personal = x;
  auto personal_f = f;
  auto best_index = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
  result.best_point = x[best_index];
  result.best_value = f[best_index];
  result.trace.push_back(result.best_value);

  double inertia = config.inertia_max;
  std::size_t neighbors = min_neighbors;
  std::size_t stall_counter = 0;
  std::vector<std::size_t> order(swarm);

  for (std::size_t iter = 1; iter <= max_iterations; ++iter) {
    for (std::size_t i = 0; i < swarm; ++i) {
      // Best personal position among a random neighbourhood (always the
      // whole swarm when the neighbourhood covers it).
      std::size_t leader = best_index;
      if (neighbors < swarm) {
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        leader = order[0];
        for (std::size_t k = 1; k < neighbors; ++k) {
          if (personal_f[order[k]] < personal_f[leader]) leader = order[k];
        }
      }
      for (std::size_t d = 0; d < dim; ++d) {
        const double u1 = unit(rng);
        const double u2 = unit(rng);
        v[i][d] = inertia * v[i][d] + config.self_weight * u1 * (personal[i][d] - x[i][d]) +
                  config.social_weight * u2 * (personal[leader][d] - x[i][d]);
        x[i][d] += v[i][d];
        if (x[i][d] < lower[d]) {
          x[i][d] = lower[d];
          v[i][d] = 0.0;
        } else if (x[i][d] > upper[d]) {
          x[i][d] = upper[d];
          v[i][d] = 0.0;
        }
      }
    }

    evaluate_all(objective, x, f, config.workers);
    result.evaluations += swarm;

    const double previous_best = result.best_value;
    for (std::size_t i = 0; i < swarm; ++i) {
      if (f[i] < personal_f[i]) {
        personal_f[i] = f[i];
        personal[i] = x[i];
        if (f[i] < result.best_value) {
          result.best_value = f[i];
          result.best_point = x[i];
          best_index = i;
        }
      }
    }
    result.trace.push_back(result.best_value);
    result.iterations = iter;

    if (result.best_value < previous_best) {
      stall_counter = stall_counter > 0 ? stall_counter - 1 : 0;
      neighbors = min_neighbors;
    } else {
      ++stall_counter;
      neighbors = std::min(neighbors + min_neighbors, swarm);
    }
    // Inertia follows the counter every iteration, so a stuck swarm contracts.
    if (stall_counter < 2) inertia *= 2.0;
    if (stall_counter > 5) inertia /= 2.0;
    inertia = std::clamp(inertia, config.inertia_min, config.inertia_max);

    // Stall rule: relative improvement over the last window is below tolerance.
    if (result.trace.size() > config.max_stall_iterations) {
      const double old = result.trace[result.trace.size() - 1 - config.max_stall_iterations];
      const double now = result.best_value;
      if (std::isfinite(old) && old - now <= config.function_tolerance * std::max(1.0, std::abs(now))) {
        result.stalled = true;
        break;
      }
    }
  }

  if (!std::isfinite(result.best_value)) {
    throw Error(ErrorCode::AllEvaluationsFailed, "no particle produced a finite objective value");
  }
  return result;
}

}  // namespace spm
