#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spm {

/// Banded storage: lower[k] = A(k+1, k), diag[k] = A(k, k), upper[k] = A(k, k+1).
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  Tridiagonal() = default;
  explicit Tridiagonal(std::size_t n) : lower(n ? n - 1 : 0), diag(n), upper(n ? n - 1 : 0) {}

  static Tridiagonal identity(std::size_t n);

  std::size_t size() const { return diag.size(); }
  double at(std::size_t row, std::size_t col) const;

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  /// alpha * A + beta * B
  static Tridiagonal combine(double alpha, const Tridiagonal& a, double beta, const Tridiagonal& b);

  /// Largest absolute row sum.
  double norm_inf() const;
};

/// Thomas-algorithm factorization without pivoting. Throws ZeroPivot when an
/// elimination pivot vanishes relative to the matrix scale.
class TridiagonalLu {
 public:
  TridiagonalLu() = default;
  explicit TridiagonalLu(const Tridiagonal& matrix);

  void factor(const Tridiagonal& matrix);
  /// Solves in place: rhs is overwritten by the solution.
  void solve_in_place(std::span<double> rhs) const;
  std::size_t size() const { return pivot_.size(); }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> pivot_;
};

std::vector<double> tridiag_solve(std::span<const double> lower, std::span<const double> diag,
                                  std::span<const double> upper, std::span<const double> rhs);

}  // namespace spm
