#include "spm/profile.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include "spm/csv.hpp"
#include "spm/error.hpp"

namespace spm {

CurrentProfile::CurrentProfile(std::vector<double> times, std::vector<double> currents)
    : times_(std::move(times)), currents_(std::move(currents)) {
  if (times_.size() != currents_.size()) throw Error(ErrorCode::LengthMismatch, "profile columns");
  if (times_.size() < 2) throw Error(ErrorCode::InvalidArgument, "profile needs at least two samples");
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k]) || !std::isfinite(currents_[k])) {
      throw Error(ErrorCode::InvalidArgument, "non-finite profile sample at row " + std::to_string(k));
    }
    if (k > 0 && !(times_[k] > times_[k - 1])) {
      throw Error(ErrorCode::NonMonotoneTime, "time " + format_double(times_[k]) + " at row " +
                                                  std::to_string(k) + " does not increase");
    }
  }
}

double CurrentProfile::at(double t) const {
  const auto upper = std::upper_bound(times_.begin(), times_.end(), t);
  if (upper == times_.begin()) return currents_.front();
  return currents_[static_cast<std::size_t>(upper - times_.begin()) - 1];
}

PiecewiseConstant CurrentProfile::as_input() const { return {times_, currents_}; }

CurrentProfile CurrentProfile::resampled(double max_dt) const {
  if (!(max_dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "resample step must be positive");
  std::vector<double> t{times_.front()}, i{currents_.front()};
  for (std::size_t k = 0; k + 1 < times_.size(); ++k) {
    const double gap = times_[k + 1] - times_[k];
    const auto pieces = static_cast<std::size_t>(std::ceil(gap / max_dt * (1.0 - 1e-12)));
    for (std::size_t p = 1; p < pieces; ++p) {
      t.push_back(times_[k] + static_cast<double>(p) * max_dt);
      i.push_back(currents_[k]);
    }
    t.push_back(times_[k + 1]);
    i.push_back(currents_[k + 1]);
  }
  return CurrentProfile(std::move(t), std::move(i));
}

CurrentProfile CurrentProfile::concatenated(const CurrentProfile& other) const {
  auto t = times_;
  auto i = currents_;
  const double shift = end() - other.start();
  // The end stamp of this profile becomes the first stamp of the other.
  i.back() = other.currents_.front();
  for (std::size_t k = 1; k < other.size(); ++k) {
    t.push_back(other.times_[k] + shift);
    i.push_back(other.currents_[k]);
  }
  return CurrentProfile(std::move(t), std::move(i));
}

CurrentProfile parse_profile(std::string_view csv_text) {
  const auto table = parse_csv(csv_text);
  if (table.header.size() != 2 || table.header[0] != "time_s" || table.header[1] != "current_A") {
    throw Error(ErrorCode::ParseError, "profile header must be 'time_s,current_A'");
  }
  return CurrentProfile(table.column("time_s"), table.column("current_A"));
}

CurrentProfile load_profile(const std::filesystem::path& path) {
  const auto table = read_csv(path);
  if (table.header.size() != 2 || table.header[0] != "time_s" || table.header[1] != "current_A") {
    throw Error(ErrorCode::ParseError, path.string() + ": header must be 'time_s,current_A'");
  }
  return CurrentProfile(table.column("time_s"), table.column("current_A"));
}

void write_profile(std::ostream& out, const CurrentProfile& profile) {
  write_csv(out, {"time_s", "current_A"}, {profile.times(), profile.currents()});
}

CurrentProfile synth_hppc(double pulse_current, double pulse_seconds, double rest_seconds, std::size_t pulses,
                          const std::vector<int>& polarity) {
  if (!(pulse_seconds > 0.0) || !(rest_seconds > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "pulse and rest durations must be positive");
  }
  if (pulses == 0 || polarity.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one pulse");
  std::vector<double> t, i;
  double now = 0.0;
  for (std::size_t k = 0; k < pulses; ++k) {
    t.push_back(now);
    i.push_back(pulse_current * polarity[k % polarity.size()]);
    now += pulse_seconds;
    t.push_back(now);
    i.push_back(0.0);
    now += rest_seconds;
  }
  t.push_back(now);
  i.push_back(0.0);
  return CurrentProfile(std::move(t), std::move(i));
}

CurrentProfile constant_current(double current, double seconds) {
  return CurrentProfile({0.0, seconds}, {current, current});
}

CurrentProfile zero_mean_random(double seconds, double hold_seconds, double rms_current, std::uint64_t seed) {
  if (!(seconds > 0.0) || !(hold_seconds > 0.0)) throw Error(ErrorCode::InvalidArgument, "durations must be positive");
  const auto holds = static_cast<std::size_t>(std::ceil(seconds / hold_seconds));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, rms_current);
  std::vector<double> t(holds + 1), i(holds + 1, 0.0);
  for (std::size_t k = 0; k < holds; ++k) {
    t[k] = static_cast<double>(k) * hold_seconds;
    i[k] = normal(rng);
  }
  t[holds] = seconds;

  // Remove the duration-weighted mean so the net charge vanishes.
  double charge = 0.0;
  for (std::size_t k = 0; k < holds; ++k) charge += i[k] * (t[k + 1] - t[k]);
  const double mean = charge / seconds;
  for (std::size_t k = 0; k < holds; ++k) i[k] -= mean;
  return CurrentProfile(std::move(t), std::move(i));
}

double net_charge(const CurrentProfile& profile) {
  const auto& t = profile.times();
  const auto& i = profile.currents();
  double charge = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) charge += i[k] * (t[k + 1] - t[k]);
  return charge;
}

}  // namespace spm
