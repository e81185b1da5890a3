#include "spm/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spm/error.hpp"

namespace spm {

namespace {

void check_range(std::size_t j, std::size_t lo, std::size_t hi, const char* what) {
  if (j < lo || j > hi) {
    throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " index " + std::to_string(j) +
                                                " outside [" + std::to_string(lo) + ", " +
                                                std::to_string(hi) + "]");
  }
}

double ball(double r) { return 4.0 * std::numbers::pi / 3.0 * r * r * r; }

}  // namespace

RadialGrid::RadialGrid(std::size_t node_count, double radius) : node_count_(node_count), radius_(radius) {
  if (node_count < 3) throw Error(ErrorCode::TooFewNodes, "need N_r >= 3, got " + std::to_string(node_count));
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::NonPositiveValue, "grid radius");
  spacing_ = radius / static_cast<double>(node_count - 1);
  nodes_.resize(node_count);
  for (std::size_t k = 0; k + 1 < node_count; ++k) nodes_[k] = static_cast<double>(k) * spacing_;
  nodes_.back() = radius;
}

double RadialGrid::node(std::size_t j) const {
  check_range(j, 1, node_count_, "node");
  return nodes_[j - 1];
}

double RadialGrid::half_node(std::size_t j) const {
  check_range(j, 0, node_count_, "half node");
  if (j == 0) return 0.0;
  if (j == node_count_) return radius_;
  return (static_cast<double>(j) - 0.5) * spacing_;
}

RadialGrid build_grid(std::size_t node_count, double radius) { return RadialGrid(node_count, radius); }

double sphere_volume(double radius) { return ball(radius); }

double fv_shell_volume(const RadialGrid& grid, std::size_t j) {
  check_range(j, 1, grid.node_count() - 1, "finite volume");
  return ball(grid.node(j + 1)) - ball(grid.node(j));
}

double cv_shell_volume(const RadialGrid& grid, std::size_t j) {
  check_range(j, 1, grid.node_count(), "control volume");
  const double inner = j == 1 ? 0.0 : grid.half_node(j - 1);
  const double outer = j == grid.node_count() ? grid.radius() : grid.half_node(j);
  return ball(outer) - ball(inner);
}

double shell_area(const RadialGrid& grid, std::size_t j) {
  const double r = grid.node(j);
  return 4.0 * std::numbers::pi * r * r;
}

double shell_area(const RadialGrid& grid, HalfIndex half) {
  const double r = grid.half_node(half.j);
  return 4.0 * std::numbers::pi * r * r;
}

}  // namespace spm
