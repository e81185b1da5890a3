#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spm/cellmodel.hpp"

namespace spm {

/// sqrt(mean((a - b)^2)).
double rmse(std::span<const double> a, std::span<const double> b);

/// Relative root-mean-square misfits; `total` is their sum.
struct ObjectiveTerms {
  double voltage = 0.0;
  double soc_p = 0.0;
  double soc_n = 0.0;
  double total = 0.0;
};

/// Each term is sqrt(mean((1 - sim/ref)^2)). Both SoC terms compare against
/// the same reference SoC series. Throws ZeroReferenceSample if any
/// reference entry is zero.
ObjectiveTerms objective_j(const SimulationResult& sim, std::span<const double> voltage_ref,
                           std::span<const double> soc_ref);

struct SweepRow {
  std::size_t node_count = 0;
  double voltage_rmse = 0.0;  // [V]
  double soc_n_rmse = 0.0;
  double soc_p_rmse = 0.0;
  std::string error;  // non-empty when this simulation failed
};

struct SweepReport {
  Scheme scheme = Scheme::fvm;
  std::string profile_tag;
  std::size_t reference_nodes = 0;
  std::vector<SweepRow> rows;
};

/// Simulates `base` at every node count and at the reference count with
/// identical parameters and compares on the profile time grid.
SweepReport node_sweep(const SimulationSpec& base, const std::vector<std::size_t>& node_counts,
                       std::size_t reference_nodes, const std::string& profile_tag = "");

struct TimingRow {
  std::size_t node_count = 0;
  double fvm_mean = 0.0;  // [s]
  double fvm_sem = 0.0;
  double cvm_mean = 0.0;
  double cvm_sem = 0.0;
  double ratio = 0.0;  // cvm_mean / fvm_mean
};

struct TimingReport {
  std::size_t replicates = 0;
  std::vector<TimingRow> rows;
};

inline constexpr std::size_t kMinReplicates = 5;

/// Times the integration of both schemes (assembly and I/O excluded).
/// Replicates run serially, alternating schemes.
TimingReport timing_study(const SimulationSpec& base, const std::vector<std::size_t>& node_counts,
                          std::size_t replicates = kMinReplicates);

void write_sweep(std::ostream& out, const SweepReport& report);
void print_sweep(std::ostream& out, const SweepReport& report);
void write_timing(std::ostream& out, const TimingReport& report);
void print_timing(std::ostream& out, const TimingReport& report);

}  // namespace spm
