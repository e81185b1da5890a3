#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "spm/integrator.hpp"

namespace spm {

/// Applied current [A] held constant from each time stamp to the next.
/// The last sample marks the end of the profile; its current applies only
/// at that instant. Positive current discharges the cell.
class CurrentProfile {
 public:
  CurrentProfile(std::vector<double> times, std::vector<double> currents);

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& currents() const { return currents_; }
  std::size_t size() const { return times_.size(); }
  double start() const { return times_.front(); }
  double end() const { return times_.back(); }
  double duration() const { return end() - start(); }

  /// Current in effect at t (right-continuous).
  double at(double t) const;

  PiecewiseConstant as_input() const;

  /// Adds stamps so no gap exceeds `max_dt`; the held current is unchanged.
  CurrentProfile resampled(double max_dt) const;

  /// Appends `other` shifted to start where this profile ends.
  CurrentProfile concatenated(const CurrentProfile& other) const;

  bool operator==(const CurrentProfile&) const = default;

 private:
  std::vector<double> times_;
  std::vector<double> currents_;
};

/// CSV with header `time_s,current_A`.
CurrentProfile parse_profile(std::string_view csv_text);
CurrentProfile load_profile(const std::filesystem::path& path);
void write_profile(std::ostream& out, const CurrentProfile& profile);

/// Square pulses separated by rests. `polarity` is cycled per pulse: {+1}
/// gives discharge-only pulses, {+1, -1} balanced discharge/charge pairs.
CurrentProfile synth_hppc(double pulse_current, double pulse_seconds, double rest_seconds,
                          std::size_t pulses, const std::vector<int>& polarity = {1, -1});

/// Constant current for `seconds`, then the profile ends.
CurrentProfile constant_current(double current, double seconds);

/// Piecewise-constant pseudo-random current with exactly zero net charge.
CurrentProfile zero_mean_random(double seconds, double hold_seconds, double rms_current, std::uint64_t seed);

/// Integral of the held current over the profile [C].
double net_charge(const CurrentProfile& profile);

}  // namespace spm
