#include "mhd2d/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "mhd2d/dynamics.hpp"
#include "mhd2d/initial_data.hpp"
#include "mhd2d/integrator.hpp"
#include "mhd2d/linear.hpp"
#include "mhd2d/spectral.hpp"

namespace mhd2d {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

/// Largest distance from an expected eigenvalue to its nearest unused
/// computed one.
double match_spectrum(std::vector<std::complex<double>> computed, const std::vector<std::complex<double>>& expected) {
  if (computed.size() != expected.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& e : expected) {
    auto it = std::min_element(computed.begin(), computed.end(),
                               [&](auto a, auto b) { return std::abs(a - e) < std::abs(b - e); });
    worst = std::max(worst, std::abs(*it - e));
    computed.erase(it);
  }
  return worst;
}

State generic_state(int n, double epsilon, std::uint64_t seed = 1) {
  InitConfig init;
  init.seed = seed;
  init.epsilon = epsilon;
  return make_initial_data(Grid::make(n, n), init, 4.0);
}

}  // namespace

std::string format_criterion(const CriterionResult& r) {
  return fmt("%s [%d] %s: %s (%.1fs)", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str(), r.seconds);
}

CriterionResult timed(const std::function<CriterionResult()>& check) {
  const auto start = Clock::now();
  CriterionResult r = check();
  if (r.seconds == 0.0) r.seconds = since(start);
  return r;
}

CriterionResult check_linear_spectra() {
  const auto start = Clock::now();
  const double r3 = std::sqrt(3.0), r7 = std::sqrt(7.0);
  using C = std::complex<double>;
  const double vertical = match_spectrum(mode_spectrum(0, 1).eigenvalues,
                                         {C(-0.5, r3 / 2), C(-0.5, -r3 / 2), C(-0.5, r3 / 2), C(-0.5, -r3 / 2)});
  const double horizontal =
      match_spectrum(mode_spectrum(1, 0).eigenvalues, {C(0.0, 0.0), C(-0.5, r7 / 2), C(-0.5, -r7 / 2), C(-1.0, 0.0)});
  const double seconds = since(start);
  CriterionResult r{1, "linear spectra", false, "", seconds};
  r.pass = vertical <= limits::kSpectrumTolerance && horizontal <= limits::kSpectrumTolerance &&
           seconds < limits::kSpectrumSeconds;
  r.detail = fmt("k=(0,1) err %.2e, k=(1,0) err %.2e, tol %.0e, limit %.0fs", vertical, horizontal,
                 limits::kSpectrumTolerance, limits::kSpectrumSeconds);
  return r;
}

CriterionResult check_symbol_identity(const LinearModesReport& report, double seconds) {
  CriterionResult r{2, "fourth-order symbol identity", false, "", seconds};
  r.pass = report.max_symbol_residual < limits::kSymbolTolerance && seconds < limits::kSymbolSeconds;
  r.detail = fmt("max residual %.3e over |k_i| <= %d, tol %.0e", report.max_symbol_residual, limits::kDampingKmax,
                 limits::kSymbolTolerance);
  return r;
}

CriterionResult check_damping_map(const LinearModesReport& report) {
  CriterionResult r{3, "anisotropic damping map", false, "", 0.0};
  double worst_damped = -INFINITY;
  int neutral = 0;
  for (const auto& row : report.rows) {
    if (row.k2 != 0) {
      worst_damped = std::max(worst_damped, row.abscissa);
    } else if (row.abscissa == 0.0 && row.kernel_dim == 1) {
      ++neutral;
    }
  }
  r.pass = report.damping_violations == 0 && !report.rows.empty();
  r.detail = fmt("%zu modes, %d violations, max abscissa over k2 != 0 = %.3e, %d neutral k2 = 0 modes",
                 report.rows.size(), report.damping_violations, worst_damped, neutral);
  return r;
}

CriterionResult check_mode_consistency() {
  CriterionResult r{4, "nonlinear/linear single-mode consistency", true, "", 0.0};
  double worst = 0.0;
  for (auto [k1, k2] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{0, 1}}) {
    const ModeConsistency mc = single_mode_consistency(64, k1, k2, 1e-6, 1e-3, 1.0);
    worst = std::max(worst, mc.relative_error);
    r.detail += fmt("(%d,%d) %.2e  ", k1, k2, mc.relative_error);
  }
  r.pass = worst <= limits::kModeRelativeError;
  r.detail += fmt("limit %.0e", limits::kModeRelativeError);
  return r;
}

CriterionResult check_integrator_order() {
  const auto start = Clock::now();
  const State initial = generic_state(64, 1e-3);
  const PhysParams params;
  CriterionResult r{5, "integrator self-convergence order", true, "", 0.0};
  for (Scheme scheme : {Scheme::IFRK3, Scheme::IFRK4}) {
    const ConvergenceStudy study = self_convergence(initial, params, scheme, 0.1, {1e-3, 5e-4, 2.5e-4, 1.25e-4});
    const int p = scheme_order(scheme);
    r.detail += fmt("%s slopes", scheme_name(scheme));
    for (double slope : study.slopes) {
      r.detail += fmt(" %.3f", slope);
      if (!(std::abs(slope - p) <= limits::kOrderSlack)) r.pass = false;
    }
    r.detail += fmt(" (p=%d); ", p);
  }
  r.seconds = since(start);
  if (r.seconds >= limits::kOrderSeconds) r.pass = false;
  r.detail += fmt("slack %.1f", limits::kOrderSlack);
  return r;
}

CriterionResult check_structure() {
  const State initial = symmetrize(generic_state(128, 1e-3));
  StepConfig stepping;
  stepping.dt = 0.01;
  stepping.project_divergence = false;
  const StructureReport rep = structure_run(initial, PhysParams{}, stepping, true, 50.0, 0.5);
  CriterionResult r{6, "structure preservation", false, "", 0.0};
  r.pass = rep.max_div_b <= limits::kDivergence && rep.max_mean_b <= limits::kMeanB &&
           rep.max_symmetry_defect <= limits::kSymmetry;
  r.detail = fmt("max ||div b|| %.2e (<= %.0e), max |mean b| %.2e (<= %.0e), symmetry defect %.2e (<= %.0e)",
                 rep.max_div_b, limits::kDivergence, rep.max_mean_b, limits::kMeanB, rep.max_symmetry_defect,
                 limits::kSymmetry);
  return r;
}

LedgerStudy ledger_study(const State& initial, const PhysParams& params, double dt, double t_end) {
  LedgerStudy s;
  s.dt = dt;
  s.residual = std::abs(ledger_residual(initial, params, Scheme::IFRK4, dt, t_end));
  s.residual_half = std::abs(ledger_residual(initial, params, Scheme::IFRK4, dt / 2, t_end));
  s.ratio = s.residual / s.residual_half;
  return s;
}

CriterionResult check_ledger_convergence() {
  return judge_ledger(ledger_study(generic_state(64, 1e-3), PhysParams{}, 5e-3, 1.0));
}

CriterionResult judge_ledger(const LedgerStudy& s) {
  CriterionResult r{7, "L2 ledger residual convergence", false, "", 0.0};
  r.pass = s.ratio >= limits::kLedgerRatioLow && s.ratio <= limits::kLedgerRatioHigh;
  r.detail = fmt("residual %.3e at dt=%g, %.3e at dt/2, ratio %.3f in [%.1f, %.1f]", s.residual, s.dt,
                 s.residual_half, s.ratio, limits::kLedgerRatioLow, limits::kLedgerRatioHigh);
  return r;
}

OmegaStudy omega_study(const State& initial, const PhysParams& params, double t, double h) {
  OmegaStudy s;
  s.h = h;
  s.error = omega_consistency(initial, params, t, h);
  s.error_half = omega_consistency(initial, params, t, h / 2);
  s.ratio = s.error / s.error_half;
  return s;
}

CriterionResult check_omega_consistency() {
  return judge_omega(omega_study(generic_state(64, 1e-3), PhysParams{}, 0.5, 5e-3));
}

CriterionResult judge_omega(const OmegaStudy& s) {
  CriterionResult r{8, "Omega consistency", false, "", 0.0};
  r.pass = s.ratio >= limits::kOmegaRatioLow && s.ratio <= limits::kOmegaRatioHigh;
  r.detail = fmt("relative error %.3e at h=%g, %.3e at h/2, ratio %.3f in [%.1f, %.1f]", s.error, s.h, s.error_half,
                 s.ratio, limits::kOmegaRatioLow, limits::kOmegaRatioHigh);
  return r;
}

RunConfig decay_preset() {
  RunConfig config;
  config.n1 = config.n2 = 128;
  config.init.epsilon = 1e-3;
  config.diag.sigma = 0.25;
  config.diag.s = 4.0;
  config.t_end = 50.0;
  return config;
}

CriterionResult check_theorem_monitor(const DecayReport& report, double seconds) {
  CriterionResult r{9, "theorem monitor boundedness", true, "", seconds};
  double worst_plateau = 0.0;
  std::string worst_family;
  std::string failing;
  for (std::size_t i = 0; i < report.monitor.size(); ++i) {
    const MonitorEntry& e = report.monitor[i];
    if (!e.pass) {
      r.pass = false;
      failing += fmt(" %s[%d] ratio %.3g > ceiling", e.family.c_str(), e.k, e.running_max);
    }
    if (!e.sup_type) continue;
    const double p = report.plateau[i];
    if (p > worst_plateau) {
      worst_plateau = p;
      worst_family = fmt("%s[%d]", e.family.c_str(), e.k);
    }
    if (!(p <= limits::kPlateau)) {
      r.pass = false;
      failing += fmt(" %s[%d] plateau %.3f", e.family.c_str(), e.k, p);
    }
  }
  // Zero data has nothing to decay; the fit is not applicable.
  const bool zero_data = report.epsilon == 0.0;
  const bool fit_ok = zero_data || (report.fit_available && report.fit.exponent <= limits::kDecayExponent);
  if (!fit_ok) r.pass = false;
  if (seconds > limits::kDecaySeconds) r.pass = false;
  r.detail = fmt("worst sup-type plateau %.3f (%s, <= %.1f); d2b fit exponent %.3f over [%g, %g] (<= %.2f)",
                 worst_plateau, worst_family.c_str(), limits::kPlateau, report.fit_available ? report.fit.exponent : NAN,
                 report.fit.t0, report.fit.t1, limits::kDecayExponent);
  if (zero_data) r.detail += "; zero data, fit skipped";
  if (!failing.empty()) r.detail += ";" + failing;
  return r;
}

CriterionResult check_lemma_suite(const LemmaSuiteReport& report) {
  CriterionResult r{10, "lemma suite", true, "", 0.0};
  int violations = 0;
  double worst_drift = 0.0;
  for (const auto& e : report.ensembles) {
    violations += e.violations;
    const double drift = e.ratio_max > 0.0 ? e.ratio_max_doubled / e.ratio_max - 1.0 : 0.0;
    worst_drift = std::max(worst_drift, std::abs(drift));
    if (e.violations > 0 || std::abs(drift) > limits::kRatioStability) r.pass = false;
  }
  if (!(report.max_constant_commutator < limits::kConstantCommutator)) r.pass = false;
  if (report.ensembles.size() != 6) r.pass = false;
  r.detail = fmt("%zu ensembles, %d violations, max ratio drift under doubling %.2f%% (<= %.0f%%), "
                 "constant-f commutator %.2e (< %.0e)",
                 report.ensembles.size(), violations, 100.0 * worst_drift, 100.0 * limits::kRatioStability,
                 report.max_constant_commutator, limits::kConstantCommutator);
  return r;
}

CriterionResult check_norm_oracles() {
  const GridPtr grid = Grid::make(32, 32);
  const ScalarField c = sample(grid, [](double x1, double) { return std::cos(x1); });
  const double pi = std::numbers::pi;
  const double l2_err = std::abs(sobolev_norm(c, 0.0) - std::sqrt(2.0 * pi * pi));
  const double h1_err = std::abs(sobolev_norm(c, 1.0) - 2.0 * pi);

  double poincare = -INFINITY, interpolation = -INFINITY;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ScalarField f = random_smooth_field(grid, seed, 1.0, 0.5, true);
    const double grad = std::sqrt(gradient_norm_sq(f, 0.0));
    poincare = std::max(poincare, (sobolev_norm(f, 0.0) - grad) / grad);
    const double s = 4.0;
    const double lhs = aniso_norm_sq(f, 1, s - 1);
    const double rhs = sobolev_norm(f, s) * aniso_norm(f, 2, s - 2);
    interpolation = std::max(interpolation, (lhs - rhs) / rhs);
  }
  CriterionResult r{11, "norm oracles", false, "", 0.0};
  r.pass = l2_err <= limits::kNormTolerance && h1_err <= limits::kNormTolerance && poincare <= limits::kInequalitySlack &&
           interpolation <= limits::kInequalitySlack;
  r.detail = fmt("|cos x1| errors %.1e (s=0), %.1e (s=1); max Poincare excess %.2e, max interpolation excess %.2e "
                 "over 100 fields",
                 l2_err, h1_err, poincare, interpolation);
  return r;
}

}  // namespace mhd2d
