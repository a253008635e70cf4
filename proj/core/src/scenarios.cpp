#include "mhd2d/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include "mhd2d/checkpoint.hpp"
#include "mhd2d/dynamics.hpp"
#include "mhd2d/error.hpp"
#include "mhd2d/integrator.hpp"

namespace mhd2d {

namespace {

double mean_b_magnitude(const State& s) {
  return std::max(std::abs(s.b.x1.coeffs()[0]), std::abs(s.b.x2.coeffs()[0]));
}

}  // namespace

std::string checkpoint_name(double time) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "checkpoint_t%010.4f.bin", time);
  return buf;
}

SimulationResult simulate(const RunConfig& config, const State& initial, const SimulationHooks& hooks) {
  config.phys.validate();
  config.stepping.validate();
  SimulationResult result{initial, EnergyLedger(config.diag, config.phys)};

  const bool checkpoints = config.checkpoint_every > 0.0 && !hooks.checkpoint_dir.empty();
  double next_checkpoint = std::numeric_limits<double>::infinity();
  if (checkpoints) {
    std::filesystem::create_directories(hooks.checkpoint_dir);
    next_checkpoint = (std::floor(initial.time / config.checkpoint_every) + 1.0) * config.checkpoint_every;
  }
  const double eps = 1e-9 * config.diag.sample_interval;

  auto observer = [&](const State& s) {
    check_smallness(s);
    result.ledger.observe(s);
    result.max_div_b = std::max(result.max_div_b, divergence_norm(s.b));
    result.max_mean_b = std::max(result.max_mean_b, mean_b_magnitude(s));
    result.max_abs_rho = std::max(result.max_abs_rho, max_abs_physical(s.rho));
    if (hooks.on_sample) hooks.on_sample(s, result.ledger);
    if (checkpoints && s.time >= next_checkpoint - eps) {
      save_checkpoint(s, config.phys, (std::filesystem::path(hooks.checkpoint_dir) / checkpoint_name(s.time)).string());
      while (next_checkpoint <= s.time + eps) next_checkpoint += config.checkpoint_every;
    }
  };
  const AdvanceOptions options{.auto_cfl = config.auto_cfl, .sample_interval = config.diag.sample_interval};
  result.final_state = advance(initial, config.phys, config.stepping, config.t_end, observer, options);
  return result;
}

LinearModesReport linear_modes(int kmax) {
  LinearModesReport report;
  report.rows = damping_map(kmax);
  for (const auto& row : report.rows) {
    const bool ok = row.k2 != 0 ? row.abscissa < 0.0 : (row.abscissa == 0.0 && row.kernel_dim == 1);
    if (!ok) ++report.damping_violations;
    report.max_symbol_residual = std::max(report.max_symbol_residual, fourth_order_symbol_check(row.k1, row.k2));
  }
  for (int k2 = 1; k2 <= kmax; ++k2) {
    report.max_wave_pair_residual = std::max(report.max_wave_pair_residual, wave_pair_check(k2));
  }
  return report;
}

ModeConsistency single_mode_consistency(int n, int k1, int k2, double amplitude, double dt, double t_end,
                                        Scheme scheme) {
  const GridPtr grid = Grid::make(n, n);
  const ModeMatrix mm = mode_matrix(k1, k2);
  // Generic vector in the constraint subspace k.b = 0.
  Vector5c v;
  const std::complex<double> i(0.0, 1.0);
  v << 1.0, 0.5 * i, -0.3 + 0.2 * i, 0.0, 0.0;
  if (mm.kept_b == 3) {
    v(3) = 0.7;
    v(4) = -0.7 * k1 / double(k2);
  } else {
    v(4) = 0.7;
    v(3) = -0.7 * k2 / double(k1);
  }
  v *= amplitude / v.norm();

  State state(grid);
  set_mode_amplitudes(state, k1, k2, v);
  const PhysParams params{1.0, 0.0, PressureLaw(1.4)};
  StepConfig stepping;
  stepping.dt = dt;
  stepping.scheme = scheme;
  const State final_state = advance(state, params, stepping, t_end);

  ModeConsistency out;
  out.simulated = mode_amplitudes(final_state, k1, k2);
  out.predicted = evolve_mode(mm, v, t_end);
  out.relative_error = (out.simulated - out.predicted).norm() / out.predicted.norm();
  return out;
}

double state_distance(const State& a, const State& b) {
  return std::sqrt(sobolev_norm_sq(a.rho - b.rho, 0.0) + sobolev_norm_sq(a.u.x1 - b.u.x1, 0.0) +
                   sobolev_norm_sq(a.u.x2 - b.u.x2, 0.0) + sobolev_norm_sq(a.b.x1 - b.b.x1, 0.0) +
                   sobolev_norm_sq(a.b.x2 - b.b.x2, 0.0));
}

double state_norm(const State& a) {
  return std::sqrt(sobolev_norm_sq(a.rho, 0.0) + sobolev_norm_sq(a.u, 0.0) + sobolev_norm_sq(a.b, 0.0));
}

ConvergenceStudy self_convergence(const State& initial, const PhysParams& params, Scheme scheme, double t_end,
                                  const std::vector<double>& dts) {
  if (dts.size() < 3) throw Error("self_convergence needs at least three step sizes");
  ConvergenceStudy study;
  study.dts = dts;
  std::vector<State> finals;
  for (double dt : dts) {
    StepConfig stepping;
    stepping.dt = dt;
    stepping.scheme = scheme;
    finals.push_back(advance(initial, params, stepping, t_end));
  }
  for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
    study.errors.push_back(state_distance(finals[i], finals[i + 1]));
  }
  for (std::size_t i = 0; i + 1 < study.errors.size(); ++i) {
    study.slopes.push_back(std::log(study.errors[i] / study.errors[i + 1]) / std::log(dts[i] / dts[i + 1]));
  }
  return study;
}

double ledger_residual(const State& initial, const PhysParams& params, Scheme scheme, double dt, double t_end) {
  StepConfig stepping;
  stepping.dt = dt;
  stepping.scheme = scheme;
  double e0 = 0.0, e1 = 0.0, integral = 0.0;
  double prev_t = 0.0, prev_f = 0.0;
  bool first = true;
  auto observer = [&](const State& s) {
    const L2Ledger l = l2_ledger(s, params);
    const double f = l.dissipation - l.i2 - l.i3;
    if (first) {
      e0 = l.energy;
      first = false;
    } else {
      integral += 0.5 * (s.time - prev_t) * (prev_f + f);
    }
    e1 = l.energy;
    prev_t = s.time;
    prev_f = f;
  };
  advance(initial, params, stepping, t_end, observer);
  return e1 - e0 + integral;
}

double omega_consistency(const State& initial, const PhysParams& params, double t, double h, int substeps) {
  if (!(t - h >= initial.time)) throw Error("omega_consistency: t - h precedes the initial time");
  StepConfig stepping;
  stepping.dt = h / substeps;
  const State before = advance(initial, params, stepping, t - h);
  const State mid = advance(before, params, stepping, t);
  const State after = advance(mid, params, stepping, t + h);
  const ScalarField difference = (1.0 / (2.0 * h)) * (omega(after, params) - omega(before, params));
  const ScalarField exact = omega_rhs(mid, params);
  return sobolev_norm(difference - exact, 0.0) / sobolev_norm(exact, 0.0);
}

StructureReport structure_run(const State& initial, const PhysParams& params, const StepConfig& stepping,
                              bool auto_cfl, double t_end, double sample_interval) {
  StructureReport report{.final_state = initial};
  auto observer = [&](const State& s) {
    report.max_div_b = std::max(report.max_div_b, divergence_norm(s.b));
    report.max_mean_b = std::max(report.max_mean_b, mean_b_magnitude(s));
    const double norm = state_norm(s);
    if (norm > 0.0) {
      report.max_symmetry_defect = std::max(report.max_symmetry_defect, state_distance(reflect_x1(s), s) / norm);
    }
  };
  report.final_state = advance(initial, params, stepping, t_end, observer,
                               {.auto_cfl = auto_cfl, .sample_interval = sample_interval});
  return report;
}

DecayReport decay_verify(const RunConfig& config, const State& initial, double ceiling, const SimulationHooks& hooks) {
  DecayReport report{simulate(config, initial, hooks), 0.0, {}, {}, {}, {}, false};
  const double s = config.diag.s;
  report.epsilon = sobolev_norm(initial.rho, s) + std::sqrt(sobolev_norm_sq(initial.u, s)) +
                   std::sqrt(sobolev_norm_sq(initial.b, s));
  const EnergyLedger& ledger = report.run.ledger;
  report.monitor = theorem_monitor(ledger, report.epsilon, ceiling);

  const double t_start = initial.time;
  const double t_half = t_start + 0.5 * (config.t_end - t_start);
  std::size_t half_index = 0;
  for (std::size_t i = 0; i < ledger.snapshots().size(); ++i) {
    if (ledger.snapshots()[i].t <= t_half + 1e-9) half_index = i;
  }
  report.monitor_half = monitor_ratios(ledger.history()[half_index], report.epsilon, ceiling);
  for (std::size_t j = 0; j < report.monitor.size(); ++j) {
    const double end = report.monitor[j].running_max;
    const double half = report.monitor_half[j].ratio;
    report.plateau.push_back(half > 0.0 ? end / half : (end > 0.0 ? std::numeric_limits<double>::infinity() : 1.0));
  }
  try {
    report.fit = decay_fit(ledger, "d2b_low", t_start + 0.1 * (config.t_end - t_start), config.t_end);
    report.fit_available = true;
  } catch (const Error&) {
    report.fit_available = false;
  }
  return report;
}

LemmaSuiteReport lemma_suite(std::uint64_t master_seed, int trials, const LabConfig& config, double stability_band) {
  LemmaSuiteReport report;
  for (const std::string lemma : {"commutator", "triple_product"}) {
    for (int s0 = 1; s0 <= 3; ++s0) {
      const auto doubled = lemma_ensemble(lemma, s0, 2 * trials, master_seed, config);
      const std::vector<LemmaTrial> first(doubled.begin(), doubled.begin() + trials);
      EnsembleSummary summary;
      summary.lemma = lemma;
      summary.s0 = s0;
      summary.trials = trials;
      summary.ratio_max = max_ratio(first);
      summary.ratio_max_doubled = max_ratio(doubled);
      std::vector<double> ratios;
      for (const auto& t : first) ratios.push_back(t.ratio);
      std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
      summary.median = ratios[ratios.size() / 2];
      for (const auto& t : doubled) {
        if (t.lhs > (1.0 + stability_band) * summary.ratio_max * t.rhs) ++summary.violations;
      }
      summary.hash = trial_set_hash(first);
      report.ensembles.push_back(summary);
      report.trials.insert(report.trials.end(), first.begin(), first.end());
    }
  }
  for (int s0 = 1; s0 <= 3; ++s0) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const LemmaTrial t = constant_commutator_trial(master_seed + seed, s0, config);
      report.max_constant_commutator = std::max(report.max_constant_commutator, t.lhs);
    }
  }
  std::vector<double> samples;
  for (int i = 0; i <= 200; ++i) samples.push_back(-0.5 + i * 0.005);
  report.remainder = pressure_remainder_trial(PressureLaw(1.4), samples);
  report.remainder_repeat = pressure_remainder_trial(PressureLaw(1.4), samples);
  return report;
}

}  // namespace mhd2d
