// Command-line front end: simulate, sweep, bench, calibrate, validate, replay.
//
// Exit codes: 0 success, 1 invalid input or usage, 2 integration failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spm/calibration.hpp"
#include "spm/csv.hpp"
#include "spm/error.hpp"
#include "spm/manifest.hpp"
#include "spm/metrics.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;
using namespace spm;

namespace {

// Options whose values are files: hashed into the manifest and stored as
// absolute paths so a replay works from any directory.
const std::set<std::string> kPathOptions{"params", "ocp-n", "ocp-p", "profile", "reference", "bounds"};

struct ModelOptions {
  std::string params, ocp_n, ocp_p, profile, hppc, random;
  std::string scheme = "fvm";
  std::string extrap = "hermite";
  std::size_t nr = 101;
  double soc0 = 1.0;
  double dt = 0.0;
  double abstol = 1e-11;
  double reltol = 1e-8;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

struct Extra {
  // sweep / bench
  std::string nr_list;
  std::size_t ref_nr = 101;
  std::size_t replicates = kMinReplicates;
  // calibrate
  std::string reference, bounds, free = "all";
  std::size_t swarm = 80, max_iter = 0, stall = 20, workers = 0;
  double tol = 1e-6;
  // simulate
  bool plot = false;
  // replay
  std::string manifest;
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::StepSizeUnderflow:
    case ErrorCode::MaxStepsExceeded:
    case ErrorCode::IntegrationFailure:
    case ErrorCode::DegenerateSurface:
    case ErrorCode::AllEvaluationsFailed:
    case ErrorCode::ZeroPivot:
      return 2;
    default:
      return 1;
  }
}

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, what + ": bad number '" + s + "'");
  }
}

std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& p : split(text)) {
    const double v = to_double(p, "node list");
    if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw Error(ErrorCode::ParseError, "node list entries must be positive integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty node list");
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

void add_model_options(CLI::App* sub, ModelOptions& o, bool needs_profile = true) {
  sub->add_option("--params", o.params, "Parameter file (key = value unit); default: built-in set for the scheme");
  sub->add_option("--ocp-n", o.ocp_n, "Negative electrode OCP CSV (theta,potential_V); default: synthetic");
  sub->add_option("--ocp-p", o.ocp_p, "Positive electrode OCP CSV; default: synthetic");
  auto* prof = sub->add_option("--profile", o.profile, "Current profile CSV (time_s,current_A)");
  auto* hppc = sub->add_option("--hppc", o.hppc, "Synthetic pulses: amps,pulse_s,rest_s,count (alternating sign)");
  auto* rnd = sub->add_option("--random", o.random, "Zero-mean random current: seconds,hold_s,rms_A (uses --seed)");
  prof->excludes(hppc)->excludes(rnd);
  hppc->excludes(rnd);
  if (needs_profile) sub->callback([prof, hppc, rnd] {
    if (prof->count() + hppc->count() + rnd->count() == 0) {
      throw CLI::ValidationError("one of --profile, --hppc or --random is required");
    }
  });
  sub->add_option("--dt", o.dt, "Resample so no profile gap exceeds this many seconds")->check(CLI::NonNegativeNumber);
  sub->add_option("--scheme", o.scheme, "fvm or cvm")->check(CLI::IsMember({"fvm", "cvm"}));
  sub->add_option("--extrap", o.extrap, "FVM surface extrapolation")->check(CLI::IsMember({"linear", "hermite"}));
  sub->add_option("--nr", o.nr, "Radial node count");
  sub->add_option("--soc0", o.soc0, "Initial state of charge")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--abstol", o.abstol, "Integrator absolute tolerance");
  sub->add_option("--reltol", o.reltol, "Integrator relative tolerance");
  sub->add_option("--seed", o.seed, "RNG seed (recorded in the manifest)");
  sub->add_option("--out", o.out, "Output directory")->required();
}

CurrentProfile build_profile(const ModelOptions& o) {
  CurrentProfile profile = constant_current(0.0, 1.0);
  if (!o.profile.empty()) {
    profile = load_profile(o.profile);
  } else if (!o.hppc.empty()) {
    const auto parts = split(o.hppc);
    if (parts.size() != 4) throw Error(ErrorCode::ParseError, "--hppc expects amps,pulse_s,rest_s,count");
    const double count = to_double(parts[3], "--hppc count");
    if (count < 1 || count != static_cast<double>(static_cast<std::size_t>(count))) {
      throw Error(ErrorCode::ParseError, "--hppc count must be a positive integer");
    }
    profile = synth_hppc(to_double(parts[0], "--hppc"), to_double(parts[1], "--hppc"), to_double(parts[2], "--hppc"),
                         static_cast<std::size_t>(count));
  } else if (!o.random.empty()) {
    const auto parts = split(o.random);
    if (parts.size() != 3) throw Error(ErrorCode::ParseError, "--random expects seconds,hold_s,rms_A");
    profile = zero_mean_random(to_double(parts[0], "--random"), to_double(parts[1], "--random"),
                               to_double(parts[2], "--random"), o.seed);
  }
  if (o.dt > 0.0) profile = profile.resampled(o.dt);
  return profile;
}

SimulationSpec build_spec(const ModelOptions& o) {
  SimulationSpec spec;
  spec.scheme = o.scheme == "cvm" ? Scheme::cvm : Scheme::fvm;
  spec.params = !o.params.empty() ? load_parameters(o.params)
                                  : (spec.scheme == Scheme::cvm ? lg_m50t_cvm() : lg_m50t_fvm());
  if (!o.ocp_n.empty()) spec.ocp_n = load_ocp(o.ocp_n, Electrode::negative);
  if (!o.ocp_p.empty()) spec.ocp_p = load_ocp(o.ocp_p, Electrode::positive);
  spec.extrapolation = o.extrap == "linear" ? Extrapolation::linear : Extrapolation::hermite;
  spec.node_count = o.nr;
  if (o.nr < 3) throw Error(ErrorCode::TooFewNodes, "--nr must be at least 3");
  spec.initial_soc = o.soc0;
  spec.integrator.abs_tol = o.abstol;
  spec.integrator.rel_tol = o.reltol;
  spec.integrator.validate();
  spec.profile = build_profile(o);
  return spec;
}

std::map<std::string, std::string> describe(const SimulationSpec& spec, const ModelOptions& o) {
  std::map<std::string, std::string> c;
  c["scheme"] = o.scheme;
  c["extrapolation"] = o.extrap;
  c["node_count"] = std::to_string(spec.node_count);
  c["initial_soc"] = format_double(spec.initial_soc);
  c["abs_tol"] = format_double(spec.integrator.abs_tol);
  c["rel_tol"] = format_double(spec.integrator.rel_tol);
  c["profile_samples"] = std::to_string(spec.profile.size());
  c["profile_duration_s"] = format_double(spec.profile.duration());
  c["parameters"] = o.params.empty() ? std::string("builtin:") + o.scheme : o.params;
  c["ocp_n"] = o.ocp_n.empty() ? "synthetic" : o.ocp_n;
  c["ocp_p"] = o.ocp_p.empty() ? "synthetic" : o.ocp_p;
  return c;
}

// Canonical command line for the manifest: every option that was given,
// output directory dropped, file paths made absolute.
std::vector<std::string> canonical_args(const CLI::App* sub, const ModelOptions& o, bool record_seed) {
  std::vector<std::string> args{sub->get_name()};
  for (const auto* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_lnames().empty()) continue;
    const auto& name = opt->get_lnames().front();
    if (name == "help" || name == "out" || name == "seed") continue;
    args.push_back("--" + name);
    if (opt->get_expected_min() == 0) continue;  // flag
    std::string value = opt->results().front();
    if (kPathOptions.count(name)) value = fs::absolute(value).lexically_normal().string();
    args.push_back(value);
  }
  if (record_seed) {
    args.push_back("--seed");
    args.push_back(std::to_string(o.seed));
  }
  return args;
}

std::map<std::string, std::string> hash_inputs(const CLI::App* sub) {
  std::map<std::string, std::string> hashes;
  for (const auto* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_lnames().empty()) continue;
    if (!kPathOptions.count(opt->get_lnames().front())) continue;
    const auto path = fs::absolute(opt->results().front()).lexically_normal();
    hashes[path.string()] = sha256_file(path);
  }
  return hashes;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void open_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir + ": " + ec.message());
}

std::ofstream open_file(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

RunManifest start_manifest(const CLI::App* sub, const ModelOptions& o, bool uses_seed) {
  RunManifest m;
  m.subcommand = sub->get_name();
  m.started_utc = utc_now();
  m.args = canonical_args(sub, o, uses_seed);
  m.input_sha256 = hash_inputs(sub);
  if (uses_seed) m.seed = o.seed;
  return m;
}

void finish_manifest(RunManifest& m, const std::string& dir) {
  m.finished_utc = utc_now();
  write_manifest(dir, m);
}

int cmd_simulate(const CLI::App* sub, ModelOptions& o, const Extra& x) {
  const bool uses_seed = !o.random.empty();
  if (uses_seed && !o.seed_given) o.seed = fresh_seed();
  const auto spec = build_spec(o);
  open_out_dir(o.out);
  auto manifest = start_manifest(sub, o, uses_seed);
  manifest.config = describe(spec, o);

  const auto result = simulate(spec);
  {
    auto out = open_file(fs::path(o.out) / "result.csv");
    write_result(out, result);
  }
  manifest.outputs.push_back("result.csv");
  if (x.plot) {
    tools::write_svg_plot(fs::path(o.out) / "voltage.svg", "Cell voltage (" + o.scheme + ")", "V [V]", result.times,
                          {{"V_cell", result.voltage, "#1f77b4"}});
    tools::write_svg_plot(fs::path(o.out) / "soc.svg", "State of charge (" + o.scheme + ")", "SoC [-]", result.times,
                          {{"SoC_n", result.n.soc, "#d62728"}, {"SoC_p", result.p.soc, "#2ca02c"}});
    manifest.outputs.push_back("voltage.svg");
    manifest.outputs.push_back("soc.svg");
  }
  finish_manifest(manifest, o.out);

  std::printf("%s N_r=%zu: %zu samples, %zu steps (%zu rejected), V %.4f -> %.4f V, integration %.3f ms\n",
              o.scheme.c_str(), spec.node_count, result.times.size(), result.stats.accepted, result.stats.rejected,
              result.voltage.front(), result.voltage.back(), result.integration_seconds * 1e3);
  return 0;
}

int cmd_sweep(const CLI::App* sub, ModelOptions& o, const Extra& x) {
  const bool uses_seed = !o.random.empty();
  if (uses_seed && !o.seed_given) o.seed = fresh_seed();
  const auto spec = build_spec(o);
  const auto nodes = parse_counts(x.nr_list);
  for (auto n : nodes) {
    if (n >= x.ref_nr) throw Error(ErrorCode::InvalidArgument, "--ref-nr must exceed every --nr-list entry");
    if (n < 3) throw Error(ErrorCode::TooFewNodes, "--nr-list entries must be at least 3");
  }
  open_out_dir(o.out);
  auto manifest = start_manifest(sub, o, uses_seed);
  manifest.config = describe(spec, o);
  manifest.config.erase("node_count");
  manifest.config["nr_list"] = join(nodes);
  manifest.config["reference_nodes"] = std::to_string(x.ref_nr);

  const std::string tag = !o.profile.empty() ? fs::path(o.profile).filename().string()
                          : !o.hppc.empty()  ? "hppc:" + o.hppc
                                             : "random:" + o.random;
  const auto report = node_sweep(spec, nodes, x.ref_nr, tag);
  {
    auto out = open_file(fs::path(o.out) / "sweep.csv");
    write_sweep(out, report);
  }
  manifest.outputs.push_back("sweep.csv");
  finish_manifest(manifest, o.out);
  print_sweep(std::cout, report);
  for (const auto& row : report.rows) {
    if (!row.error.empty()) std::fprintf(stderr, "warning: N_r=%zu failed: %s\n", row.node_count, row.error.c_str());
  }
  return 0;
}

int cmd_bench(const CLI::App* sub, ModelOptions& o, const Extra& x) {
  if (x.replicates < kMinReplicates) {
    throw Error(ErrorCode::InvalidArgument, "--replicates must be at least " + std::to_string(kMinReplicates));
  }
  const bool uses_seed = !o.random.empty();
  if (uses_seed && !o.seed_given) o.seed = fresh_seed();
  const auto spec = build_spec(o);
  const auto nodes = parse_counts(x.nr_list);
  for (auto n : nodes) {
    if (n < 3) throw Error(ErrorCode::TooFewNodes, "--nr-list entries must be at least 3");
  }
  open_out_dir(o.out);
  auto manifest = start_manifest(sub, o, uses_seed);
  manifest.config = describe(spec, o);
  manifest.config.erase("node_count");
  manifest.config.erase("scheme");
  manifest.config["nr_list"] = join(nodes);
  manifest.config["replicates"] = std::to_string(x.replicates);

  const auto report = timing_study(spec, nodes, x.replicates);
  {
    auto out = open_file(fs::path(o.out) / "timing.csv");
    write_timing(out, report);
  }
  manifest.outputs.push_back("timing.csv");
  finish_manifest(manifest, o.out);
  print_timing(std::cout, report);
  return 0;
}

int cmd_calibrate(const CLI::App* sub, ModelOptions& o, const Extra& x) {
  if (!o.seed_given) o.seed = fresh_seed();
  CalibrationProblem problem;
  problem.base = build_spec(o);
  problem.bounds = x.bounds.empty() ? ParameterBounds{} : load_bounds(x.bounds);
  problem.reference = load_reference(x.reference, problem.base.profile.times());
  if (x.free == "all") {
    problem.free.fill(true);
  } else {
    for (const auto& name : split(x.free)) problem.free[lambda_index(name)] = true;
  }

  PsoConfig cfg;
  cfg.swarm_size = x.swarm;
  cfg.max_iterations = x.max_iter;
  cfg.max_stall_iterations = x.stall;
  cfg.function_tolerance = x.tol;
  cfg.seed = o.seed;
  cfg.workers = x.workers;
  cfg.validate();

  open_out_dir(o.out);
  auto manifest = start_manifest(sub, o, true);
  manifest.config = describe(problem.base, o);
  manifest.config["free"] = x.free;
  manifest.config["swarm_size"] = std::to_string(cfg.swarm_size);
  manifest.config["self_weight"] = format_double(cfg.self_weight);
  manifest.config["social_weight"] = format_double(cfg.social_weight);
  manifest.config["min_neighbors_fraction"] = format_double(cfg.min_neighbors_fraction);

  const auto result = calibrate(problem, cfg);
  {
    auto out = open_file(fs::path(o.out) / "lambda.csv");
    write_lambda(out, problem, result);
  }
  {
    auto out = open_file(fs::path(o.out) / "trace.csv");
    write_trace(out, result.pso);
  }
  {
    auto spec = problem.base;
    set_lambda(spec.params, result.lambda);
    auto out = open_file(fs::path(o.out) / "fit.csv");
    write_result(out, simulate(spec));
  }
  manifest.outputs = {"lambda.csv", "trace.csv", "fit.csv"};
  finish_manifest(manifest, o.out);

  std::printf("seed %llu, %zu iterations, %zu evaluations\n", static_cast<unsigned long long>(result.seed),
              result.pso.iterations, result.pso.evaluations);
  std::printf("J = %.4f%%  (J_V %.4f%%, J_SoCp %.4f%%, J_SoCn %.4f%%)\n", 100 * result.terms.total,
              100 * result.terms.voltage, 100 * result.terms.soc_p, 100 * result.terms.soc_n);
  for (std::size_t i = 0; i < kLambdaSize; ++i) {
    std::printf("  %-6s %-12.6g%s\n", std::string(lambda_name(i)).c_str(), result.lambda[i],
                problem.free[i] ? "" : "  (fixed)");
  }
  return 0;
}

int cmd_validate(const ModelOptions& o) {
  const auto params = o.params.empty() ? (o.scheme == "cvm" ? lg_m50t_cvm() : lg_m50t_fvm()) : load_parameters(o.params);
  std::printf("parameters ok: 1C = %.4f A, capacity n %.1f C, p %.1f C\n", one_c_current(params),
              electrode_capacity(params, Electrode::negative), electrode_capacity(params, Electrode::positive));
  if (!o.ocp_n.empty()) std::printf("ocp-n ok: %zu knots\n", load_ocp(o.ocp_n, Electrode::negative).theta().size());
  if (!o.ocp_p.empty()) std::printf("ocp-p ok: %zu knots\n", load_ocp(o.ocp_p, Electrode::positive).theta().size());
  if (!o.profile.empty()) {
    const auto p = load_profile(o.profile);
    std::printf("profile ok: %zu samples, %.1f s, net charge %.6g C\n", p.size(), p.duration(), net_charge(p));
  }
  return 0;
}

int run(const std::vector<std::string>& argv);

int cmd_replay(const Extra& x, const std::string& out) {
  const auto manifest = read_manifest(x.manifest);
  for (const auto& [path, hash] : manifest.input_sha256) {
    if (!fs::exists(path)) throw Error(ErrorCode::IoError, "input " + path + " is missing");
    if (sha256_file(path) != hash) throw Error(ErrorCode::InvalidArgument, "input " + path + " changed since the run");
  }
  if (manifest.subcommand == "replay" || manifest.args.empty() || manifest.args.front() != manifest.subcommand) {
    throw Error(ErrorCode::ParseError, "manifest does not describe a replayable run");
  }
  auto args = manifest.args;
  args.push_back("--out");
  args.push_back(out);
  return run(args);
}

int run(const std::vector<std::string>& argv) {
  CLI::App app{"Single particle model toolkit: FVM/CVM simulation, sweeps, timing and calibration", "spm"};
  app.require_subcommand(1);
  ModelOptions o;
  Extra x;

  auto* sim = app.add_subcommand("simulate", "Run one simulation and write result.csv");
  add_model_options(sim, o);
  sim->add_flag("--plot", x.plot, "Also write voltage.svg and soc.svg");

  auto* sweep = app.add_subcommand("sweep", "Node-count sweep against a fine reference");
  add_model_options(sweep, o);
  x.nr_list = "6,11,21,41,81";
  sweep->add_option("--nr-list", x.nr_list, "Comma-separated N_r values");
  sweep->add_option("--ref-nr", x.ref_nr, "Reference N_r");

  auto* bench = app.add_subcommand("bench", "CVM/FVM integration wall-time study");
  add_model_options(bench, o);
  bench->add_option("--nr-list", x.nr_list, "Comma-separated N_r values")->default_str("6,11,21,41,81,101");
  bench->add_option("--replicates", x.replicates, "Replicates per scheme and N_r (at least 5)");

  auto* cal = app.add_subcommand("calibrate", "Particle swarm identification against a reference series");
  add_model_options(cal, o);
  cal->add_option("--reference", x.reference, "CSV with time_s, voltage_V and soc (or soc_n, soc_p)")->required();
  cal->add_option("--bounds", x.bounds, "Bounds file (key = min, max); default: published search box");
  cal->add_option("--free", x.free, "Comma-separated parameters to identify, or 'all'");
  cal->add_option("--swarm", x.swarm, "Swarm size");
  cal->add_option("--max-iter", x.max_iter, "Iteration cap (0 = 200 per free parameter)");
  cal->add_option("--stall", x.stall, "Stall window in iterations");
  cal->add_option("--tol", x.tol, "Relative improvement below which the window counts as stalled");
  cal->add_option("--workers", x.workers, "Concurrent simulations (0 = all cores)");

  auto* val = app.add_subcommand("validate", "Check parameter, OCP and profile files");
  val->add_option("--params", o.params, "Parameter file");
  val->add_option("--ocp-n", o.ocp_n, "Negative electrode OCP CSV");
  val->add_option("--ocp-p", o.ocp_p, "Positive electrode OCP CSV");
  val->add_option("--profile", o.profile, "Current profile CSV");
  val->add_option("--scheme", o.scheme, "Built-in set used when --params is absent")
      ->check(CLI::IsMember({"fvm", "cvm"}));

  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", x.manifest, "manifest.json from an earlier run")->required()->check(CLI::ExistingFile);
  std::string replay_out;
  replay->add_option("--out", replay_out, "Output directory for the re-run")->required();

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    for (auto* sub : {sim, sweep, bench, cal}) {
      if (sub->parsed()) {
        o.seed_given = sub->get_option("--seed")->count() > 0;
        if (sub == sim) return cmd_simulate(sub, o, x);
        if (sub == sweep) return cmd_sweep(sub, o, x);
        if (sub == bench) return cmd_bench(sub, o, x);
        return cmd_calibrate(sub, o, x);
      }
    }
    if (val->parsed()) return cmd_validate(o);
    return cmd_replay(x, replay_out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(std::vector<std::string>(argv + 1, argv + argc)); }
