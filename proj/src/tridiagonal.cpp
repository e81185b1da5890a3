#include "spm/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spm/error.hpp"

namespace spm {

Tridiagonal Tridiagonal::identity(std::size_t n) {
  Tridiagonal t(n);
  std::fill(t.diag.begin(), t.diag.end(), 1.0);
  return t;
}

double Tridiagonal::at(std::size_t row, std::size_t col) const {
  if (row == col) return diag[row];
  if (row == col + 1) return lower[col];
  if (col == row + 1) return upper[row];
  return 0.0;
}

void Tridiagonal::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  if (x.size() != n || y.size() != n) throw Error(ErrorCode::LengthMismatch, "tridiagonal multiply");
  if (n == 0) return;
  if (n == 1) {
    y[0] = diag[0] * x[0];
    return;
  }
  y[0] = diag[0] * x[0] + upper[0] * x[1];
  for (std::size_t k = 1; k + 1 < n; ++k) {
    y[k] = lower[k - 1] * x[k - 1] + diag[k] * x[k] + upper[k] * x[k + 1];
  }
  y[n - 1] = lower[n - 2] * x[n - 2] + diag[n - 1] * x[n - 1];
}

std::vector<double> Tridiagonal::multiply(std::span<const double> x) const {
  std::vector<double> y(size());
  multiply(x, y);
  return y;
}

Tridiagonal Tridiagonal::combine(double alpha, const Tridiagonal& a, double beta, const Tridiagonal& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "tridiagonal combine");
  Tridiagonal out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out.diag[k] = alpha * a.diag[k] + beta * b.diag[k];
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    out.lower[k] = alpha * a.lower[k] + beta * b.lower[k];
    out.upper[k] = alpha * a.upper[k] + beta * b.upper[k];
  }
  return out;
}

double Tridiagonal::norm_inf() const {
  double best = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    double row = std::abs(diag[k]);
    if (k > 0) row += std::abs(lower[k - 1]);
    if (k + 1 < size()) row += std::abs(upper[k]);
    best = std::max(best, row);
  }
  return best;
}

TridiagonalLu::TridiagonalLu(const Tridiagonal& matrix) { factor(matrix); }

void TridiagonalLu::factor(const Tridiagonal& matrix) {
  const std::size_t n = matrix.size();
  lower_.resize(n > 0 ? n - 1 : 0);
  upper_ = matrix.upper;
  pivot_.resize(n);
  const double tiny = matrix.norm_inf() * std::numeric_limits<double>::epsilon();
  for (std::size_t k = 0; k < n; ++k) {
    double p = matrix.diag[k];
    if (k > 0) {
      lower_[k - 1] = matrix.lower[k - 1] / pivot_[k - 1];
      p -= lower_[k - 1] * upper_[k - 1];
    }
    if (!(std::abs(p) > tiny)) {
      throw Error(ErrorCode::ZeroPivot, "pivot " + std::to_string(k) + " vanished during elimination");
    }
    pivot_[k] = p;
  }
}

void TridiagonalLu::solve_in_place(std::span<double> rhs) const {
  const std::size_t n = pivot_.size();
  if (rhs.size() != n) throw Error(ErrorCode::LengthMismatch, "tridiagonal solve");
  for (std::size_t k = 1; k < n; ++k) rhs[k] -= lower_[k - 1] * rhs[k - 1];
  if (n == 0) return;
  rhs[n - 1] /= pivot_[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) rhs[k] = (rhs[k] - upper_[k] * rhs[k + 1]) / pivot_[k];
}

std::vector<double> tridiag_solve(std::span<const double> lower, std::span<const double> diag,
                                  std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (rhs.size() != n || lower.size() + 1 != n || upper.size() + 1 != n) {
    throw Error(ErrorCode::LengthMismatch, "tridiagonal band sizes");
  }
  Tridiagonal m(n);
  std::copy(lower.begin(), lower.end(), m.lower.begin());
  std::copy(diag.begin(), diag.end(), m.diag.begin());
  std::copy(upper.begin(), upper.end(), m.upper.begin());
  std::vector<double> x(rhs.begin(), rhs.end());
  TridiagonalLu(m).solve_in_place(x);
  return x;
}

}  // namespace spm
