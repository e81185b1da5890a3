#include "spm/ocp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "spm/csv.hpp"
#include "spm/error.hpp"

namespace spm {

namespace {

// Fritsch-Carlson derivatives: harmonic mean of adjacent secants, zero at
// local extrema, one-sided three-point formula at the ends.
std::vector<double> monotone_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), delta(n - 1), d(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x[k + 1] - x[k];
    delta[k] = (y[k + 1] - y[k]) / h[k];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] <= 0.0) continue;
    const double w1 = 2.0 * h[k] + h[k - 1];
    const double w2 = h[k] + 2.0 * h[k - 1];
    d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
  }
  auto end_slope = [](double h0, double h1, double m0, double m1) {
    double s = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (s * m0 <= 0.0) return 0.0;
    if (m0 * m1 <= 0.0 && std::abs(s) > std::abs(3.0 * m0)) return 3.0 * m0;
    return s;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

}  // namespace

OcpCurve::OcpCurve(Electrode electrode, std::vector<double> theta, std::vector<double> potential,
                   OcpInterpolation mode)
    : electrode_(electrode), mode_(mode), theta_(std::move(theta)), potential_(std::move(potential)) {
  if (theta_.size() != potential_.size()) {
    throw Error(ErrorCode::LengthMismatch, "OCP theta and potential columns differ in length");
  }
  if (theta_.size() < 2) throw Error(ErrorCode::InvalidArgument, "OCP curve needs at least 2 knots");
  for (std::size_t k = 0; k < theta_.size(); ++k) {
    if (!std::isfinite(theta_[k]) || !std::isfinite(potential_[k])) {
      throw Error(ErrorCode::InvalidArgument, "non-finite OCP knot");
    }
    if (k > 0 && !(theta_[k] > theta_[k - 1])) {
      throw Error(ErrorCode::InvalidArgument, "OCP knots must be strictly increasing");
    }
  }
  slope_ = monotone_slopes(theta_, potential_);
}

OcpValue OcpCurve::eval(double theta) const {
  if (theta <= theta_.front()) return {potential_.front(), theta < theta_.front()};
  if (theta >= theta_.back()) return {potential_.back(), theta > theta_.back()};

  const auto upper = std::upper_bound(theta_.begin(), theta_.end(), theta);
  const auto k = static_cast<std::size_t>(upper - theta_.begin()) - 1;
  const double h = theta_[k + 1] - theta_[k];
  const double t = (theta - theta_[k]) / h;
  const double y0 = potential_[k];
  const double y1 = potential_[k + 1];
  if (mode_ == OcpInterpolation::linear) return {y0 + t * (y1 - y0), false};

  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return {h00 * y0 + h10 * h * slope_[k] + h01 * y1 + h11 * h * slope_[k + 1], false};
}

OcpCurve load_ocp(const std::filesystem::path& path, Electrode electrode, OcpInterpolation mode) {
  const auto table = read_csv(path);
  const auto theta = table.column("theta");
  const auto potential = table.column("potential_V");
  return OcpCurve(electrode, theta, potential, mode);
}

void write_ocp(std::ostream& out, const OcpCurve& curve) {
  out << "theta,potential_V\n";
  char line[96];
  for (std::size_t k = 0; k < curve.theta().size(); ++k) {
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", curve.theta()[k], curve.potential()[k]);
    out << line;
  }
}

double synthetic_ocp_formula(Electrode electrode, double theta) {
  if (electrode == Electrode::positive) {
    return 3.4 + 0.9 * (1.0 - theta) - 0.3 * std::exp(-20.0 * (1.0 - theta));
  }
  return 0.1 + 0.8 * std::exp(-30.0 * theta) + 0.05 * (1.0 - theta);
}

OcpCurve synthetic_ocp(Electrode electrode) {
  constexpr std::size_t knots = 201;
  std::vector<double> theta(knots), potential(knots);
  for (std::size_t k = 0; k < knots; ++k) {
    theta[k] = static_cast<double>(k) / static_cast<double>(knots - 1);
    potential[k] = synthetic_ocp_formula(electrode, theta[k]);
  }
  return OcpCurve(electrode, std::move(theta), std::move(potential));
}

}  // namespace spm
