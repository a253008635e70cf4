#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mhd2d/config.hpp"
#include "mhd2d/diagnostics.hpp"
#include "mhd2d/lemma_lab.hpp"
#include "mhd2d/linear.hpp"

namespace mhd2d {

// ----------------------------------------------------------- simulation ---

struct SimulationHooks {
  /// Called at every sample after the ledger has been updated.
  std::function<void(const State&, const EnergyLedger&)> on_sample;
  /// Directory for checkpoints; empty disables them regardless of config.
  std::string checkpoint_dir;
};

struct SimulationResult {
  State final_state;
  EnergyLedger ledger;
  /// Maxima over all samples.
  double max_div_b = 0.0;
  double max_mean_b = 0.0;
  double max_abs_rho = 0.0;
};

/// Advances `initial` to config.t_end, feeding every sample to an EnergyLedger.
SimulationResult simulate(const RunConfig& config, const State& initial, const SimulationHooks& hooks = {});

std::string checkpoint_name(double time);

// ------------------------------------------------------- linear theory ---

struct LinearModesReport {
  std::vector<DampingRow> rows;
  double max_symbol_residual = 0.0;
  double max_wave_pair_residual = 0.0;
  /// Rows violating "abscissa < 0 for k2 != 0; abscissa = 0 and kernel 1 for k2 = 0".
  int damping_violations = 0;
};

LinearModesReport linear_modes(int kmax = 16);

struct ModeConsistency {
  Vector5c simulated;
  Vector5c predicted;
  double relative_error = 0.0;
};

/// Seeds a divergence-free mode at k with amplitude `amplitude`, evolves it
/// with the full nonlinear stepper and compares with exp(t A) at t_end.
ModeConsistency single_mode_consistency(int n, int k1, int k2, double amplitude, double dt, double t_end,
                                        Scheme scheme = Scheme::IFRK4);

// --------------------------------------------------------- convergence ---

/// L^2 distance over all five fields.
double state_distance(const State& a, const State& b);
double state_norm(const State& a);

struct ConvergenceStudy {
  std::vector<double> dts;
  /// errors[i] = ||y(dts[i]) - y(dts[i+1])||
  std::vector<double> errors;
  /// log(errors[i]/errors[i+1]) / log(dts[i]/dts[i+1])
  std::vector<double> slopes;
};

/// Self-convergence over a fixed horizon with the given step sizes.
ConvergenceStudy self_convergence(const State& initial, const PhysParams& params, Scheme scheme, double t_end,
                                  const std::vector<double>& dts);

/// E(T) - E(0) + int_0^T (D - I2 - I3) dt by the trapezoid rule on every step.
double ledger_residual(const State& initial, const PhysParams& params, Scheme scheme, double dt, double t_end);

/// Relative L^2 error between (Omega(t+h) - Omega(t-h)) / (2h) and
/// omega_rhs(t), with the trajectory integrated at steps of h / substeps.
double omega_consistency(const State& initial, const PhysParams& params, double t, double h, int substeps = 4);

struct StructureReport {
  double max_div_b = 0.0;
  double max_mean_b = 0.0;
  /// max over samples of ||reflect_x1(y) - y|| / ||y||
  double max_symmetry_defect = 0.0;
  State final_state;
};

StructureReport structure_run(const State& initial, const PhysParams& params, const StepConfig& stepping,
                              bool auto_cfl, double t_end, double sample_interval);

// ------------------------------------------------------------ theorem ---

struct DecayReport {
  SimulationResult run;
  double epsilon = 0.0;
  std::vector<MonitorEntry> monitor;
  std::vector<MonitorEntry> monitor_half;
  /// Running-max ratio at t_end over the value at t_end/2, per entry (1 when both vanish).
  std::vector<double> plateau;
  DecayFit fit;
  bool fit_available = false;
};

DecayReport decay_verify(const RunConfig& config, const State& initial, double ceiling,
                         const SimulationHooks& hooks = {});

// -------------------------------------------------------------- lemmas ---

struct EnsembleSummary {
  std::string lemma;
  int s0 = 1;
  int trials = 0;
  double ratio_max = 0.0;
  double ratio_max_doubled = 0.0;
  double median = 0.0;
  /// Trials of the doubled ensemble with lhs > (1 + stability_band) ratio_max rhs.
  int violations = 0;
  std::uint64_t hash = 0;
};

struct LemmaSuiteReport {
  std::vector<EnsembleSummary> ensembles;
  std::vector<LemmaTrial> trials;
  double max_constant_commutator = 0.0;
  RemainderBounds remainder;
  RemainderBounds remainder_repeat;
};

LemmaSuiteReport lemma_suite(std::uint64_t master_seed, int trials = 500, const LabConfig& config = {},
                             double stability_band = 0.05);

}  // namespace mhd2d
