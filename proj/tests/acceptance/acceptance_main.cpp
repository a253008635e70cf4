// Runs every acceptance check in order and prints one PASS/FAIL line each.
// Exit status is the number of failing criteria (capped at 1).

#include <chrono>
#include <iostream>
#include <vector>

#include "mhd2d/acceptance.hpp"
#include "mhd2d/initial_data.hpp"

using namespace mhd2d;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::vector<CriterionResult> results;
  auto report = [&](CriterionResult r) {
    std::cout << format_criterion(r) << std::endl;
    results.push_back(std::move(r));
  };

  report(timed(check_linear_spectra));

  auto t0 = std::chrono::steady_clock::now();
  const LinearModesReport modes = linear_modes(limits::kDampingKmax);
  const double modes_seconds = seconds_since(t0);
  report(check_symbol_identity(modes, modes_seconds));
  CriterionResult damping = check_damping_map(modes);
  damping.seconds = modes_seconds;
  report(damping);

  report(timed(check_mode_consistency));
  report(timed(check_integrator_order));
  report(timed(check_structure));
  report(timed(check_ledger_convergence));
  report(timed(check_omega_consistency));

  const RunConfig preset = decay_preset();
  t0 = std::chrono::steady_clock::now();
  const DecayReport decay = decay_verify(preset, make_initial_data(preset), limits::kMonitorCeiling);
  report(check_theorem_monitor(decay, seconds_since(t0)));

  report(timed([] { return check_lemma_suite(lemma_suite(1)); }));
  report(timed(check_norm_oracles));

  int failed = 0;
  for (const CriterionResult& r : results) failed += r.pass ? 0 : 1;
  std::cout << results.size() - failed << "/" << results.size() << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
