#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "spm/params.hpp"

namespace spm {

enum class OcpInterpolation { linear, monotone_cubic };

struct OcpValue {
  double potential;   // [V]
  bool out_of_range;  // theta was clamped to the knot span
};

/// Tabulated open-circuit potential U(theta) for one electrode.
class OcpCurve {
 public:
  OcpCurve(Electrode electrode, std::vector<double> theta, std::vector<double> potential,
           OcpInterpolation mode = OcpInterpolation::monotone_cubic);

  OcpValue eval(double theta) const;

  Electrode electrode() const { return electrode_; }
  OcpInterpolation mode() const { return mode_; }
  std::span<const double> theta() const { return theta_; }
  std::span<const double> potential() const { return potential_; }

 private:
  Electrode electrode_;
  OcpInterpolation mode_;
  std::vector<double> theta_;
  std::vector<double> potential_;
  std::vector<double> slope_;  // Fritsch-Carlson knot derivatives
};

/// CSV with header `theta,potential_V`.
OcpCurve load_ocp(const std::filesystem::path& path, Electrode electrode,
                  OcpInterpolation mode = OcpInterpolation::monotone_cubic);
void write_ocp(std::ostream& out, const OcpCurve& curve);

/// Smooth synthetic curves (no measured data): U_p falls across [0, 1];
/// U_n drops steeply at low lithiation and flattens out.
OcpCurve synthetic_ocp(Electrode electrode);
double synthetic_ocp_formula(Electrode electrode, double theta);

}  // namespace spm
