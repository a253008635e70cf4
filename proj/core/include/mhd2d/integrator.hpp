#pragma once

#include <functional>

#include <Eigen/Core>

#include "mhd2d/state.hpp"

namespace mhd2d {

enum class Scheme { IFRK3, IFRK4 };

int scheme_order(Scheme scheme);
const char* scheme_name(Scheme scheme);
/// Accepts "IFRK3" / "IFRK4" (case-insensitive); throws Error otherwise.
Scheme parse_scheme(const std::string& name);

struct StepConfig {
  double dt = 1e-3;
  double cfl_safety = 0.4;
  Scheme scheme = Scheme::IFRK4;
  /// Exponential filter on rho and b above 80% of the dealiasing cutoff.
  bool filter_enabled = false;
  /// Filter damping per unit time at the cutoff.
  double filter_strength = 10.0;
  /// Re-project b when ||div b|| exceeds divergence_tolerance.
  bool project_divergence = true;
  double divergence_tolerance = 1e-10;

  void validate() const;
};

/// exp(-tau (mu |k|^2 I + lambda k k^T)) acting on (u1hat, u2hat).
Eigen::Matrix2d viscous_semigroup(int k1, int k2, double tau, double mu, double lambda);

/// Applies the viscous semigroup to u in place.
void apply_viscous_semigroup(VectorField& u, double tau, const PhysParams& params);

/// Largest step allowed by the advective bound
/// cfl_safety * (2 pi / max(n1, n2)) / (1 + ||u||_inf + ||b||_inf).
double cfl_limit(const State& state, double cfl_safety);

/// One integrating-factor Runge-Kutta step of size dt (not config.dt, so
/// callers can shorten steps). Throws CflViolation if dt exceeds cfl_limit.
State step(const State& state, const PhysParams& params, const StepConfig& config, double dt);
inline State step(const State& state, const PhysParams& params, const StepConfig& config) {
  return step(state, params, config, config.dt);
}

using Observer = std::function<void(const State&)>;

struct AdvanceOptions {
  /// Pick dt from cfl_limit at every step (capped by config.dt).
  bool auto_cfl = false;
  /// Observer cadence; <= 0 observes after every step.
  double sample_interval = 0.0;
};

/// Steps from state.time to t_end. Steps are shortened to land exactly on
/// sample times and on t_end. The observer sees the initial state, every
/// sample and the final state.
State advance(State state, const PhysParams& params, const StepConfig& config, double t_end,
              const Observer& observer = {}, const AdvanceOptions& options = {});

}  // namespace mhd2d
