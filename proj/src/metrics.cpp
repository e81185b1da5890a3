#include "spm/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>

#include "spm/csv.hpp"
#include "spm/error.hpp"
#include "spm/parallel.hpp"

namespace spm {

namespace {

double relative_rms(std::span<const double> sim, std::span<const double> ref, const char* what) {
  if (sim.size() != ref.size() || sim.empty()) {
    throw Error(ErrorCode::LengthMismatch, std::string(what) + ": simulated and reference series differ in length");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < sim.size(); ++k) {
    if (ref[k] == 0.0) {
      throw Error(ErrorCode::ZeroReferenceSample, std::string(what) + " reference is zero at sample " +
                                                      std::to_string(k));
    }
    const double d = 1.0 - sim[k] / ref[k];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(sim.size()));
}

std::string_view scheme_name(Scheme s) { return s == Scheme::fvm ? "fvm" : "cvm"; }

std::pair<double, double> mean_and_sem(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {mean, sd / std::sqrt(n)};
}

}  // namespace

double rmse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw Error(ErrorCode::LengthMismatch, "rmse needs equal, non-empty series");
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(sum / static_cast<double>(a.size()));
}

ObjectiveTerms objective_j(const SimulationResult& sim, std::span<const double> voltage_ref,
                           std::span<const double> soc_ref) {
  ObjectiveTerms j;
  j.voltage = relative_rms(sim.voltage, voltage_ref, "voltage");
  j.soc_p = relative_rms(sim.p.soc, soc_ref, "SoC_p");
  j.soc_n = relative_rms(sim.n.soc, soc_ref, "SoC_n");
  j.total = j.voltage + j.soc_p + j.soc_n;
  return j;
}

SweepReport node_sweep(const SimulationSpec& base, const std::vector<std::size_t>& node_counts,
                       std::size_t reference_nodes, const std::string& profile_tag) {
  if (node_counts.empty()) throw Error(ErrorCode::InvalidArgument, "empty node list");
  for (auto n : node_counts) {
    if (n >= reference_nodes) {
      throw Error(ErrorCode::InvalidArgument, "reference N_r must exceed every sweep value");
    }
  }

  // Slot 0 is the reference; the rest follow node_counts.
  std::vector<std::size_t> counts{reference_nodes};
  counts.insert(counts.end(), node_counts.begin(), node_counts.end());
  std::vector<SimulationResult> results(counts.size());
  std::vector<std::string> errors(counts.size());
  parallel_for(counts.size(), [&](std::size_t i) {
    auto spec = base;
    spec.node_count = counts[i];
    try {
      results[i] = simulate(spec);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  if (!errors[0].empty()) throw Error(ErrorCode::IntegrationFailure, "reference run failed: " + errors[0]);

  SweepReport report{base.scheme, profile_tag, reference_nodes, {}};
  const auto& ref = results[0];
  for (std::size_t i = 1; i < counts.size(); ++i) {
    SweepRow row;
    row.node_count = counts[i];
    if (!errors[i].empty()) {
      row.voltage_rmse = row.soc_n_rmse = row.soc_p_rmse = std::numeric_limits<double>::quiet_NaN();
      row.error = errors[i];
    } else {
      row.voltage_rmse = rmse(results[i].voltage, ref.voltage);
      row.soc_n_rmse = rmse(results[i].n.soc, ref.n.soc);
      row.soc_p_rmse = rmse(results[i].p.soc, ref.p.soc);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

TimingReport timing_study(const SimulationSpec& base, const std::vector<std::size_t>& node_counts,
                          std::size_t replicates) {
  if (replicates < kMinReplicates) {
    throw Error(ErrorCode::InvalidArgument, "timing needs at least " + std::to_string(kMinReplicates) + " replicates");
  }
  TimingReport report{replicates, {}};
  for (auto nodes : node_counts) {
    std::vector<double> fvm, cvm;
    for (std::size_t r = 0; r < replicates; ++r) {
      for (Scheme scheme : {Scheme::fvm, Scheme::cvm}) {
        auto spec = base;
        spec.scheme = scheme;
        spec.node_count = nodes;
        const double seconds = simulate(spec).integration_seconds;
        (scheme == Scheme::fvm ? fvm : cvm).push_back(seconds);
      }
    }
    TimingRow row;
    row.node_count = nodes;
    std::tie(row.fvm_mean, row.fvm_sem) = mean_and_sem(fvm);
    std::tie(row.cvm_mean, row.cvm_sem) = mean_and_sem(cvm);
    row.ratio = row.cvm_mean / row.fvm_mean;
    report.rows.push_back(row);
  }
  return report;
}

void write_sweep(std::ostream& out, const SweepReport& report) {
  out << "# scheme=" << scheme_name(report.scheme) << " reference_nodes=" << report.reference_nodes;
  if (!report.profile_tag.empty()) out << " profile=" << report.profile_tag;
  out << '\n';
  for (const auto& row : report.rows) {
    if (!row.error.empty()) out << "# N_r=" << row.node_count << " failed: " << row.error << '\n';
  }
  std::vector<double> nodes, v, sn, sp;
  for (const auto& row : report.rows) {
    nodes.push_back(static_cast<double>(row.node_count));
    v.push_back(row.voltage_rmse);
    sn.push_back(row.soc_n_rmse);
    sp.push_back(row.soc_p_rmse);
  }
  write_csv(out, {"node_count", "voltage_rmse_V", "soc_n_rmse", "soc_p_rmse"}, {nodes, v, sn, sp});
}

void print_sweep(std::ostream& out, const SweepReport& report) {
  char line[160];
  std::snprintf(line, sizeof line, "%s vs N_r=%zu reference\n%6s %16s %14s %14s\n",
                std::string(scheme_name(report.scheme)).c_str(), report.reference_nodes, "N_r", "V RMSE [mV]",
                "SoC_n RMSE", "SoC_p RMSE");
  out << line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%6zu %16.6f %14.3e %14.3e\n", row.node_count, row.voltage_rmse * 1e3,
                  row.soc_n_rmse, row.soc_p_rmse);
    out << line;
  }
}

void write_timing(std::ostream& out, const TimingReport& report) {
  out << "# replicates=" << report.replicates << '\n';
  std::vector<double> nodes, fm, fs, cm, cs, ratio;
  for (const auto& row : report.rows) {
    nodes.push_back(static_cast<double>(row.node_count));
    fm.push_back(row.fvm_mean);
    fs.push_back(row.fvm_sem);
    cm.push_back(row.cvm_mean);
    cs.push_back(row.cvm_sem);
    ratio.push_back(row.ratio);
  }
  write_csv(out, {"node_count", "fvm_mean_s", "fvm_sem_s", "cvm_mean_s", "cvm_sem_s", "ratio_cvm_fvm"},
            {nodes, fm, fs, cm, cs, ratio});
}

void print_timing(std::ostream& out, const TimingReport& report) {
  char line[160];
  std::snprintf(line, sizeof line, "%6s %14s %14s %8s   (%zu replicates)\n", "N_r", "FVM [ms]", "CVM [ms]", "ratio",
                report.replicates);
  out << line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%6zu %8.3f±%-5.3f %8.3f±%-5.3f %8.3f\n", row.node_count, row.fvm_mean * 1e3,
                  row.fvm_sem * 1e3, row.cvm_mean * 1e3, row.cvm_sem * 1e3, row.ratio);
    out << line;
  }
}

}  // namespace spm
