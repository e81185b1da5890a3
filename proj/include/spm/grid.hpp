#pragma once

#include <cstddef>
#include <vector>

namespace spm {

/// Uniform radial grid r_j = (j-1) dr, j = 1..N_r, on one spherical particle.
///
/// Indices in this API are the 1-based node numbers used throughout the
/// model description; half positions are addressed by `HalfIndex` so that
/// `HalfIndex{j}` means r_{j+1/2}.
class RadialGrid {
 public:
  RadialGrid(std::size_t node_count, double radius);

  std::size_t node_count() const { return node_count_; }
  double radius() const { return radius_; }
  double spacing() const { return spacing_; }

  /// r_j for j in [1, N_r]; r_{N_r} is exactly the radius.
  double node(std::size_t j) const;
  /// r_{j+1/2} = (j - 1/2) dr for j in [0, N_r], clipped to [0, R].
  double half_node(std::size_t j) const;

  const std::vector<double>& nodes() const { return nodes_; }

 private:
  std::size_t node_count_;
  double radius_;
  double spacing_;
  std::vector<double> nodes_;
};

RadialGrid build_grid(std::size_t node_count, double radius);

struct HalfIndex {
  std::size_t j;  // refers to r_{j+1/2}
};

/// Shell [r_j, r_{j+1}], j in [1, N_r - 1].
double fv_shell_volume(const RadialGrid& grid, std::size_t j);
/// Shell [r_{j-1/2}, r_{j+1/2}] clipped to [0, R], j in [1, N_r].
double cv_shell_volume(const RadialGrid& grid, std::size_t j);
/// 4 pi r_j^2.
double shell_area(const RadialGrid& grid, std::size_t j);
/// 4 pi r_{j+1/2}^2.
double shell_area(const RadialGrid& grid, HalfIndex half);

double sphere_volume(double radius);

}  // namespace spm
