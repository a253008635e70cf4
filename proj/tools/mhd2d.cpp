// mhd2d: command-line driver for the spectral solver and its verification
// scenarios. Every scenario prints one PASS/FAIL line per criterion it covers
// and exits nonzero if any of them fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mhd2d/acceptance.hpp"
#include "mhd2d/checkpoint.hpp"
#include "mhd2d/config.hpp"
#include "mhd2d/error.hpp"
#include "mhd2d/initial_data.hpp"
#include "mhd2d/lemma_lab.hpp"
#include "mhd2d/linear.hpp"
#include "mhd2d/scenarios.hpp"

namespace fs = std::filesystem;
using namespace mhd2d;

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string resume;
};

class Report {
 public:
  explicit Report(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void write(const std::string& name, const std::string& contents) const {
    std::ofstream out(dir_ / name, std::ios::binary);
    out << contents;
    if (!out) throw mhd2d::Error("cannot write " + (dir_ / name).string());
  }

  void note(const std::string& line) {
    std::cout << line << '\n';
    summary_ << line << '\n';
  }

  void add(const CriterionResult& r) {
    note(format_criterion(r));
    if (!r.pass) failed_.push_back(r.id);
  }

  /// Writes summary.txt and returns the exit status.
  int finish() {
    if (!failed_.empty()) {
      std::string ids;
      for (int id : failed_) ids += (ids.empty() ? "" : ", ") + std::to_string(id);
      note("failing criteria: " + ids);
    }
    write("summary.txt", summary_.str());
    return failed_.empty() ? 0 : 1;
  }

  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::ostringstream summary_;
  std::vector<int> failed_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunConfig small_grid() {
  RunConfig config;
  config.n1 = config.n2 = 64;
  return config;
}

RunConfig resolve_config(const Options& opt, RunConfig fallback) {
  RunConfig config = opt.config_path.empty() ? fallback : load_config(opt.config_path);
  if (opt.seed) config.init.seed = *opt.seed;
  if (!opt.out_dir.empty()) config.out_dir = opt.out_dir;
  return config;
}

State initial_state(const Options& opt, const RunConfig& config) {
  if (opt.resume.empty()) return make_initial_data(config);
  const Checkpoint ckpt = load_checkpoint(opt.resume, Grid::make(config.n1, config.n2));
  const PhysParams& p = ckpt.params;
  if (p.mu != config.phys.mu || p.lambda != config.phys.lambda ||
      p.pressure.gamma() != config.phys.pressure.gamma()) {
    throw mhd2d::Error("checkpoint " + opt.resume + " was written with different physical parameters");
  }
  if (ckpt.state.time >= config.t_end) {
    throw mhd2d::Error("checkpoint time is already at or past t_end");
  }
  return ckpt.state;
}

std::string monitor_csv(const DecayReport& rep) {
  std::ostringstream out;
  out << "family,k,sup_type,eps_power,ratio,running_max,ratio_half,plateau,pass\n";
  out.precision(10);
  for (std::size_t i = 0; i < rep.monitor.size(); ++i) {
    const MonitorEntry& e = rep.monitor[i];
    out << e.family << ',' << e.k << ',' << e.sup_type << ',' << e.eps_power << ',' << e.ratio << ','
        << e.running_max << ',' << rep.monitor_half[i].ratio << ',' << rep.plateau[i] << ',' << e.pass << '\n';
  }
  return out.str();
}

int run_simulate(const Options& opt) {
  const RunConfig config = resolve_config(opt, RunConfig{});
  Report report(config.out_dir);
  report.write("config.ini", format_config(config));
  const State initial = initial_state(opt, config);
  const auto t0 = std::chrono::steady_clock::now();
  SimulationHooks hooks;
  hooks.checkpoint_dir = (report.dir() / "checkpoints").string();
  const SimulationResult result = simulate(config, initial, hooks);
  report.write("ledger.csv", result.ledger.csv());
  save_checkpoint(result.final_state, config.phys, (report.dir() / "final.bin").string());

  char line[256];
  std::snprintf(line, sizeof line, "simulated t = %.4f -> %.4f on %dx%d in %.1fs", initial.time,
                result.final_state.time, config.n1, config.n2, seconds_since(t0));
  report.note(line);
  std::snprintf(line, sizeof line, "max ||div b|| %.3e, max |mean b| %.3e, max |rho| %.3e, E_total %.6e",
                result.max_div_b, result.max_mean_b, result.max_abs_rho, result.ledger.total_energy());
  report.note(line);
  return report.finish();
}

int run_linear_modes(const Options& opt) {
  Report report(opt.out_dir.empty() ? "out/linear-modes" : opt.out_dir);
  report.add(timed(check_linear_spectra));
  const auto t0 = std::chrono::steady_clock::now();
  const LinearModesReport modes = linear_modes(limits::kDampingKmax);
  const double seconds = seconds_since(t0);
  report.write("damping_map.csv", damping_csv(modes.rows));
  report.add(check_symbol_identity(modes, seconds));
  CriterionResult damping = check_damping_map(modes);
  damping.seconds = seconds;
  report.add(damping);
  return report.finish();
}

int run_decay_verify(const Options& opt) {
  const RunConfig config = resolve_config(opt, decay_preset());
  Report report(config.out_dir == "out" ? "out/decay-verify" : config.out_dir);
  report.write("config.ini", format_config(config));
  const State initial = initial_state(opt, config);
  const auto t0 = std::chrono::steady_clock::now();
  SimulationHooks hooks;
  hooks.checkpoint_dir = (report.dir() / "checkpoints").string();
  const DecayReport rep = decay_verify(config, initial, limits::kMonitorCeiling, hooks);
  const double seconds = seconds_since(t0);
  report.write("ledger.csv", rep.run.ledger.csv());
  report.write("monitor.csv", monitor_csv(rep));
  if (rep.fit_available) {
    report.write("decay_fit.txt", rep.fit.report());
    report.note(rep.fit.report());
  }
  char line[160];
  std::snprintf(line, sizeof line, "monitor ceiling %.3g (calibrated, not derived)", limits::kMonitorCeiling);
  report.note(line);
  report.add(check_theorem_monitor(rep, seconds));
  return report.finish();
}

int run_omega_residual(const Options& opt) {
  const RunConfig config = resolve_config(opt, small_grid());
  Report report(config.out_dir == "out" ? "out/omega-residual" : config.out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  const State initial = make_initial_data(config);
  const OmegaStudy study = omega_study(initial, config.phys, 0.5, 5e-3);
  std::ostringstream csv;
  csv.precision(10);
  csv << "h,relative_error\n" << study.h << ',' << study.error << '\n' << study.h / 2 << ',' << study.error_half << '\n';
  report.write("omega.csv", csv.str());
  CriterionResult r = judge_omega(study);
  r.seconds = seconds_since(t0);
  report.add(r);
  return report.finish();
}

int run_ledger_check(const Options& opt) {
  const RunConfig config = resolve_config(opt, small_grid());
  Report report(config.out_dir == "out" ? "out/ledger-check" : config.out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  const State initial = make_initial_data(config);
  const LedgerStudy study = ledger_study(initial, config.phys, 5e-3, 1.0);
  std::ostringstream csv;
  csv.precision(10);
  csv << "dt,residual\n" << study.dt << ',' << study.residual << '\n' << study.dt / 2 << ',' << study.residual_half << '\n';
  report.write("ledger_check.csv", csv.str());
  CriterionResult r = judge_ledger(study);
  r.seconds = seconds_since(t0);
  report.add(r);
  return report.finish();
}

int run_lemma_suite(const Options& opt) {
  const std::uint64_t seed = opt.seed.value_or(1);
  Report report(opt.out_dir.empty() ? "out/lemma-suite" : opt.out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  const LemmaSuiteReport rep = lemma_suite(seed);
  std::string trials = lemma_csv_header() + "\n";
  for (const auto& t : rep.trials) trials += lemma_csv_row(t) + "\n";
  report.write("lemma_trials.csv", trials);

  std::ostringstream summary;
  summary.precision(10);
  summary << "lemma,s0,trials,ratio_max,ratio_max_doubled,median,violations,hash\n";
  for (const auto& e : rep.ensembles) {
    summary << e.lemma << ',' << e.s0 << ',' << e.trials << ',' << e.ratio_max << ',' << e.ratio_max_doubled << ','
            << e.median << ',' << e.violations << ',' << e.hash << '\n';
  }
  report.write("lemma_summary.csv", summary.str());
  char line[160];
  std::snprintf(line, sizeof line, "pressure remainder: max |q|/rho^2 %.6f, max |q1|/rho^2 %.6f", rep.remainder.q_ratio,
                rep.remainder.q1_ratio);
  report.note(line);
  CriterionResult r = check_lemma_suite(rep);
  r.seconds = seconds_since(t0);
  report.add(r);
  return report.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral solver for 2D compressible MHD without magnetic diffusion"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "Configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "Output directory");
    sub->add_option("--seed", seed, "Random seed (initial data or lemma master seed)");
    sub->add_option("--resume", opt.resume, "Checkpoint to resume from")->check(CLI::ExistingFile);
  };
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Command commands[] = {
      {"simulate", "Run the configured simulation and write the energy ledger", run_simulate},
      {"linear-modes", "Linear spectra, symbol identity and damping map", run_linear_modes},
      {"decay-verify", "Long run with the theorem monitor and decay fit", run_decay_verify},
      {"omega-residual", "Central-difference check of the Omega evolution", run_omega_residual},
      {"lemma-suite", "Randomized commutator and triple-product ensembles", run_lemma_suite},
      {"ledger-check", "Convergence of the L2 energy balance residual", run_ledger_check},
  };
  for (const Command& c : commands) add_common(app.add_subcommand(c.name, c.help));

  CLI11_PARSE(app, argc, argv);
  for (const Command& c : commands) {
    CLI::App* sub = app.get_subcommand(c.name);
    if (!sub->parsed()) continue;
    if (sub->count("--seed") > 0) opt.seed = seed;
    const std::string name = c.name;
    if (!opt.resume.empty() && name != "simulate" && name != "decay-verify") {
      std::cerr << "error: --resume applies to simulate and decay-verify only\n";
      return 2;
    }
    try {
      return c.run(opt);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  }
  return 2;
}
