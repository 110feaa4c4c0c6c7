// tfm-synth: forward simulation and inverse design of coupled-ring biphoton sources.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tfm/config.hpp"
#include "tfm/error.hpp"
#include "tfm/inversion.hpp"
#include "tfm/io.hpp"
#include "tfm/pipeline.hpp"
#include "tfm/resonator.hpp"

namespace fs = std::filesystem;
using namespace tfm;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitFailure = 3;

struct Options {
  std::vector<std::string> configs;
  std::string out = ".";
  std::optional<int> grid;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::string avg_power;
  std::string rep_rate;
  std::vector<std::string> target;
  std::vector<std::string> search;
  std::string mu_min = "0 GHz";
  std::string mu_max = "10 GHz";
  std::string mu_step = "0.1 GHz";
  bool csv = false;
};

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("io", "cannot create output directory '" + dir + "': " + ec.message());
}

std::string in_dir(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void apply_pgr_overrides(DeviceConfig& c, const Options& o) {
  if (!o.avg_power.empty()) c.pgr.avg_power = Power(parse_quantity(o.avg_power, Dimension::kPower, "--avg-power"));
  if (!o.rep_rate.empty()) c.pgr.rep_rate = Rate(parse_quantity(o.rep_rate, Dimension::kRate, "--rep-rate"));
}

void write_simulation(const Simulation& s, const std::string& dir, bool csv) {
  ensure_dir(dir);
  write_file_atomic(in_dir(dir, "jsa.bin"), jsa_binary(s.jsa));
  write_file_atomic(in_dir(dir, "jsa.json"), jsa_sidecar(s.jsa, "jsa.bin").dump(2) + "\n");
  if (csv) write_file_atomic(in_dir(dir, "jsa.csv"), jsa_csv(s.jsa));
  const Spectra& sp = s.spectra;
  write_file_atomic(in_dir(dir, "fir.csv"), spectrum_csv(sp.fir.grid, sp.fir.values.cwiseAbs(), "abs_H"));
  write_file_atomic(in_dir(dir, "l_idler.csv"), spectrum_csv(sp.l_idler.grid, sp.l_idler.values.cwiseAbs(), "abs_l"));
  write_file_atomic(in_dir(dir, "l_pump.csv"), spectrum_csv(sp.l_pump.grid, sp.l_pump.values.cwiseAbs(), "abs_l"));
  write_file_atomic(in_dir(dir, "l_signal.csv"), spectrum_csv(sp.l_signal.grid, sp.l_signal.values.cwiseAbs(), "abs_l"));
  write_file_atomic(in_dir(dir, "bus_idler.csv"), spectrum_csv(sp.l_idler.grid, sp.bus_idler, "abs2_St_over_Si"));
  write_file_atomic(in_dir(dir, "bus_pump.csv"), spectrum_csv(sp.l_pump.grid, sp.bus_pump, "abs2_St_over_Si"));
  write_file_atomic(in_dir(dir, "bus_signal.csv"), spectrum_csv(sp.l_signal.grid, sp.bus_signal, "abs2_St_over_Si"));
  write_file_atomic(in_dir(dir, "report.json"), report_json(s.report, s.pgr).dump(2) + "\n");
}

void print_summary(const StateReport& r) {
  std::printf("K'        %s\n", fmt9(r.k_prime).c_str());
  std::printf("purity    %s\n", fmt9(r.purity).c_str());
  std::printf("higher    %s\n", fmt9(r.higher_order_weight).c_str());
  if (r.fidelity) std::printf("fidelity  %s\n", fmt9(*r.fidelity).c_str());
  if (r.fidelity_hg) std::printf("fid (HG)  %s\n", fmt9(*r.fidelity_hg).c_str());
}

int cmd_simulate(const Options& o) {
  DeviceConfig c = load_config(o.configs);
  apply_pgr_overrides(c, o);
  const Simulation s = simulate(c, o.grid);
  write_simulation(s, o.out, o.csv);
  print_summary(s.report);
  return 0;
}

int cmd_optimize(const Options& o) {
  std::vector<std::string> paths = o.configs;
  paths.insert(paths.end(), o.target.begin(), o.target.end());
  paths.insert(paths.end(), o.search.begin(), o.search.end());
  DeviceConfig c = load_config(paths);
  if (o.seed) c.search.seed = *o.seed;
  if (o.restarts) {
    if (*o.restarts < 1) throw ConfigError("--restarts", "must be at least 1");
    c.search.restarts = *o.restarts;
  }
  if (o.grid) c.search.verify_points = *o.grid;
  if (c.search.mu.values().empty()) throw ConfigError("search.mu_step", "empty mu sweep");
  const TargetState target = c.target_state();
  apply_pgr_overrides(c, o);
  ensure_dir(o.out);

  const std::string trace_path = in_dir(o.out, "trace.jsonl");
  const std::string trace_tmp = trace_path + ".tmp";
  std::ofstream trace(trace_tmp, std::ios::trunc);
  if (!trace) throw Error("io", "cannot open '" + trace_tmp + "'");
  const auto t0 = std::chrono::steady_clock::now();
  const OptimizeResult res = optimize_state(target, c.fixed_params(), c.search, [&](const TrialRecord& t) {
    trace << trial_json(t).dump() << '\n';
    trace.flush();
  });
  trace.close();
  fs::rename(trace_tmp, trace_path);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  write_file_atomic(in_dir(o.out, "best_params.yaml"), serialize_free_params(res.best));

  DeviceConfig v = c;
  v.model.pump.sigma_p = res.best.sigma_p;
  v.model.pump.taps = res.best.taps;
  v.model.signal.mu = v.model.idler.mu = res.best.mu_signal_idler;
  v.model.pump_resonance.mu = res.best.mu_pump;
  const Simulation s = simulate(v, c.search.verify_points);
  write_simulation(s, in_dir(o.out, "verify"), false);
  write_file_atomic(in_dir(o.out, "report.json"), report_json(s.report, s.pgr).dump(2) + "\n");

  std::printf("trials    %zu in %.1f s\n", res.trace.size(), secs);
  std::printf("search    %s\n", fmt9(res.fidelity).c_str());
  print_summary(s.report);
  return 0;
}

int cmd_pgr(const Options& o) {
  DeviceConfig c = load_config(o.configs);
  apply_pgr_overrides(c, o);
  const PgrInput in = make_pgr_input(c.pgr_raw());
  std::cout << pgr_json(in, pair_generation_rate(in)).dump(2) << '\n';
  return 0;
}

int cmd_sweep_mzi(const Options& o) {
  const DeviceConfig c = load_config(o.configs);
  const MziCouplerSpec spec = c.mzi_spec();
  const double lo = parse_quantity(o.mu_min, Dimension::kRate, "--mu-min");
  const double hi = parse_quantity(o.mu_max, Dimension::kRate, "--mu-max");
  const double step = parse_quantity(o.mu_step, Dimension::kRate, "--mu-step");
  if (!(step > 0.0)) throw ConfigError("--mu-step", "must be positive");
  if (lo < 0.0 || hi < lo) throw ConfigError("--mu-max", "empty mu range");
  const double mu_max = mzi_max_mu(spec).value();

  std::string csv = "mu_12_hz,phi_h1,phi_h2,phi_h3,finesse_rad_s\n";
  const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  for (int k = 0; k <= n; ++k) {
    const double mu = lo + k * step;
    if (mu > mu_max) {
      std::fprintf(stderr, "resonator: sweep truncated at mu_max = %s Hz\n", fmt9(mu_max).c_str());
      break;
    }
    const MziSetting s = mzi_phase_for_mu(spec, Rate(mu));
    csv += fmt9(mu) + ',' + fmt9(s.phi_h1) + ',' + fmt9(s.phi_h2) + ',' + fmt9(s.phi_h3) + ',' + fmt9(s.finesse) + '\n';
  }
  if (o.out.empty() || o.out == "-") {
    std::cout << csv;
  } else {
    write_file_atomic(o.out, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tfm-synth: time-frequency-mode biphoton source simulation and inverse design"};
  app.require_subcommand(1);
  Options o;

  auto* sim = app.add_subcommand("simulate", "forward model, pi imposition and state analysis");
  sim->add_option("--config", o.configs, "device config (repeatable; later files override)")->required();
  sim->add_option("--out", o.out, "output directory");
  sim->add_option("--grid", o.grid, "signal/idler grid points");
  sim->add_option("--avg-power", o.avg_power, "average pump power, e.g. 1mW");
  sim->add_option("--rep-rate", o.rep_rate, "pulse repetition rate, e.g. 500MHz");
  sim->add_flag("--csv", o.csv, "also write jsa.csv");

  auto* opt = app.add_subcommand("optimize", "search taps, sigma_p and mu for a target state");
  opt->add_option("--config", o.configs, "fixed-parameter config (repeatable)")->required();
  opt->add_option("--target", o.target, "target spec config");
  opt->add_option("--search", o.search, "search config");
  opt->add_option("--out", o.out, "output directory");
  opt->add_option("--seed", o.seed, "RNG seed");
  opt->add_option("--restarts", o.restarts, "restarts per mu point");
  opt->add_option("--grid", o.grid, "verification grid points");

  auto* pgr = app.add_subcommand("pgr", "pair generation rate as JSON on stdout");
  pgr->add_option("--config", o.configs, "device config (repeatable)")->required();
  pgr->add_option("--avg-power", o.avg_power, "average pump power, e.g. 4mW");
  pgr->add_option("--rep-rate", o.rep_rate, "pulse repetition rate, e.g. 500MHz");

  auto* mzi = app.add_subcommand("sweep-mzi", "MZI phase settings across a mu_12 range as CSV");
  mzi->add_option("--config", o.configs, "config with device and mzi sections (repeatable)")->required();
  mzi->add_option("--mu-min", o.mu_min, "first mu_12, e.g. 0GHz");
  mzi->add_option("--mu-max", o.mu_max, "last mu_12, e.g. 10GHz");
  mzi->add_option("--mu-step", o.mu_step, "mu_12 step, e.g. 0.1GHz");
  mzi->add_option("--out", o.out, "CSV path ('-' for stdout)")->default_val("-");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(o);
    if (opt->parsed()) return cmd_optimize(o);
    if (pgr->parsed()) return cmd_pgr(o);
    if (mzi->parsed()) return cmd_sweep_mzi(o);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "tfm-synth: %s\n", e.what());
    return kExitConfig;
  } catch (const Error& e) {
    std::fprintf(stderr, "tfm-synth: %s\n", e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "tfm-synth: io: %s\n", e.what());
    return kExitFailure;
  }
  return kExitFailure;
}
