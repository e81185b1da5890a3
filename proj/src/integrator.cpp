#include "spm/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "spm/error.hpp"

namespace spm {

namespace {

// Alexander's three-stage SDIRK: L-stable, stiffly accurate, third order.
// Every stage solves with the same matrix M - gamma h K. The embedded
// second-order weights (last one zero) give the error estimate; the
// third-order solution is propagated.
const double kGamma = 0.43586652150845917;
const double kA21 = (1.0 - kGamma) / 2.0;
const double kB1 = -(6.0 * kGamma * kGamma - 16.0 * kGamma + 1.0) / 4.0;
const double kB2 = (6.0 * kGamma * kGamma - 20.0 * kGamma + 5.0) / 4.0;
const double kBh2 = (1.0 - 2.0 * kGamma) / (1.0 - kGamma);
const double kBh1 = 1.0 - kBh2;
const double kE1 = kB1 - kBh1;
const double kE2 = kB2 - kBh2;
const double kE3 = kGamma;

class Stepper {
 public:
  Stepper(const LinearOdeProblem& problem, const IntegratorConfig& config)
      : problem_(problem), config_(config), n_(problem.size()),
        identity_(problem.mass ? Tridiagonal() : Tridiagonal::identity(n_)), my_(n_), f0_(n_), k1_(n_), k2_(n_),
        k3_(n_), stage_(n_), y1_(n_), err_(n_) {}

  // Attempts one step of size h from y with constant input u. Returns the
  // weighted max-norm of the error estimate; y1_ holds the candidate.
  double attempt(std::span<const double> y, double h, double u, StepStats& stats) {
    const auto& K = problem_.stiffness;
    const auto& b = problem_.input_gain;
    lu_.factor(Tridiagonal::combine(1.0, problem_.mass ? *problem_.mass : identity_, -kGamma * h, K));
    ++stats.factorizations;
    apply_mass(y, my_);

    // Stage i: (M - gamma h K) Y_i = M y + h sum_j a_ij k_j + gamma h b u.
    for (std::size_t i = 0; i < n_; ++i) stage_[i] = my_[i] + kGamma * h * b[i] * u;
    lu_.solve_in_place(stage_);
    rate(stage_, u, k1_);

    for (std::size_t i = 0; i < n_; ++i) stage_[i] = my_[i] + h * (kA21 * k1_[i] + kGamma * b[i] * u);
    lu_.solve_in_place(stage_);
    rate(stage_, u, k2_);

    for (std::size_t i = 0; i < n_; ++i) y1_[i] = my_[i] + h * (kB1 * k1_[i] + kB2 * k2_[i] + kGamma * b[i] * u);
    lu_.solve_in_place(y1_);
    rate(y1_, u, k3_);

    // Filtered estimate: (M - gamma h K)^-1 instead of M^-1 keeps stiff
    // components from inflating it.
    for (std::size_t i = 0; i < n_; ++i) err_[i] = h * (kE1 * k1_[i] + kE2 * k2_[i] + kE3 * k3_[i]);
    lu_.solve_in_place(err_);
    stats.linear_solves += 4;

    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double scale = config_.abs_tol + config_.rel_tol * std::max(std::abs(y[i]), std::abs(y1_[i]));
      worst = std::max(worst, std::abs(err_[i]) / scale);
    }
    return worst;
  }

  const std::vector<double>& candidate() const { return y1_; }

  // Step that changes the weighted state by about 1% of its magnitude.
  double initial_step(std::span<const double> y, double u) {
    rate(y, u, f0_);
    if (problem_.mass) TridiagonalLu(*problem_.mass).solve_in_place(f0_);
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double scale = config_.abs_tol + config_.rel_tol * std::abs(y[i]);
      d0 = std::max(d0, std::abs(y[i]) / scale);
      d1 = std::max(d1, std::abs(f0_[i]) / scale);
    }
    if (d1 <= 0.0 || !std::isfinite(d1)) return std::numeric_limits<double>::infinity();
    return 0.01 * std::max(d0, 1.0) / d1;
  }

 private:
  void rate(std::span<const double> y, double u, std::vector<double>& out) const {
    problem_.stiffness.multiply(y, out);
    for (std::size_t i = 0; i < n_; ++i) out[i] += problem_.input_gain[i] * u;
  }

  void apply_mass(std::span<const double> y, std::vector<double>& out) const {
    if (problem_.mass) {
      problem_.mass->multiply(y, out);
    } else {
      std::copy(y.begin(), y.end(), out.begin());
    }
  }

  const LinearOdeProblem& problem_;
  const IntegratorConfig& config_;
  std::size_t n_;
  Tridiagonal identity_;
  TridiagonalLu lu_;
  std::vector<double> my_, f0_, k1_, k2_, k3_, stage_, y1_, err_;
};

}  // namespace

void IntegratorConfig::validate() const {
  if (!(abs_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "abs_tol must be positive");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw Error(ErrorCode::InvalidArgument, "rel_tol must lie in (0, 1)");
  if (!(min_step >= 0.0) || !(max_step > 0.0) || min_step > max_step) {
    throw Error(ErrorCode::InvalidArgument, "need 0 <= min_step <= max_step");
  }
  if (initial_step != 0.0 && (initial_step < min_step || initial_step > max_step)) {
    throw Error(ErrorCode::InvalidArgument, "initial_step outside [min_step, max_step]");
  }
  if (max_steps == 0) throw Error(ErrorCode::InvalidArgument, "max_steps must be positive");
}

double PiecewiseConstant::at(double t) const {
  if (values.empty()) return 0.0;
  const auto upper = std::upper_bound(times.begin(), times.end(), t);
  if (upper == times.begin()) return values.front();
  return values[static_cast<std::size_t>(upper - times.begin()) - 1];
}

StepStats& StepStats::operator+=(const StepStats& other) {
  accepted += other.accepted;
  rejected += other.rejected;
  factorizations += other.factorizations;
  linear_solves += other.linear_solves;
  return *this;
}

Trajectory integrate(const LinearOdeProblem& problem, const IntegratorConfig& config,
                     std::span<const double> sample_times, std::span<const double> y0) {
  config.validate();
  const std::size_t n = problem.size();
  if (y0.size() != n || problem.input_gain.size() != n || (problem.mass && problem.mass->size() != n)) {
    throw Error(ErrorCode::LengthMismatch, "initial state and problem sizes differ");
  }
  if (sample_times.empty()) throw Error(ErrorCode::InvalidArgument, "no sample times");
  for (std::size_t k = 1; k < sample_times.size(); ++k) {
    if (!(sample_times[k] > sample_times[k - 1])) {
      throw Error(ErrorCode::InvalidArgument, "sample times must be strictly increasing");
    }
  }

  // Every point where a step must end: samples and input breakpoints in span.
  std::vector<double> stops(sample_times.begin() + 1, sample_times.end());
  for (double b : problem.input.times) {
    if (b > sample_times.front() && b < sample_times.back()) stops.push_back(b);
  }
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  Trajectory out;
  out.times.assign(sample_times.begin(), sample_times.end());
  out.states.reserve(sample_times.size());
  out.states.emplace_back(y0.begin(), y0.end());

  Stepper stepper(problem, config);
  std::vector<double> y(y0.begin(), y0.end());
  double t = sample_times.front();
  double u = problem.input.at(t);
  double h = config.initial_step > 0.0 ? config.initial_step : stepper.initial_step(y, u);
  std::size_t next_sample = 1;
  std::size_t steps = 0;

  for (double stop : stops) {
    while (t < stop) {
      if (++steps > config.max_steps) {
        throw Error(ErrorCode::MaxStepsExceeded, "exceeded " + std::to_string(config.max_steps) + " steps");
      }
      h = std::min(h, config.max_step);
      const double remaining = stop - t;
      const bool lands = h >= remaining * (1.0 - 1e-12) || t + 1.1 * h >= stop;
      const double step = lands ? remaining : h;
      const double floor = std::max(config.min_step, 16.0 * std::numeric_limits<double>::epsilon() * std::abs(t));
      if (step < floor && !lands) {
        throw Error(ErrorCode::StepSizeUnderflow, "step " + std::to_string(step) + " at t = " + std::to_string(t));
      }

      const double err = stepper.attempt(y, step, u, out.stats);
      if (!std::isfinite(err)) {
        throw Error(ErrorCode::IntegrationFailure, "non-finite state at t = " + std::to_string(t));
      }
      if (err <= 1.0) {
        ++out.stats.accepted;
        y = stepper.candidate();
        t = lands ? stop : t + step;
        const double grow = err > 0.0 ? 0.9 * std::cbrt(1.0 / err) : 5.0;
        const double proposal = step * std::clamp(grow, 0.2, 5.0);
        // A step shortened to hit a stop says little about the natural size.
        h = step < h ? std::max(h, proposal) : proposal;
      } else {
        ++out.stats.rejected;
        if (step <= floor) {
          throw Error(ErrorCode::StepSizeUnderflow, "cannot meet tolerance at t = " + std::to_string(t));
        }
        h = step * std::clamp(0.9 * std::cbrt(1.0 / err), 0.2, 0.9);
      }
    }

    if (next_sample < sample_times.size() && stop == sample_times[next_sample]) {
      out.states.push_back(y);
      ++next_sample;
    }
    const double u_next = problem.input.at(t);
    if (u_next != u) {
      u = u_next;
      h = config.initial_step > 0.0 ? config.initial_step : std::min(h, stepper.initial_step(y, u));
    }
  }
  return out;
}

}  // namespace spm
