#pragma once

#include <cstdint>
#include <string>

#include "mhd2d/diagnostics.hpp"
#include "mhd2d/integrator.hpp"
#include "mhd2d/state.hpp"

namespace mhd2d {

struct InitConfig {
  std::uint64_t seed = 1;
  double epsilon = 1e-3;
  double decay_rate = 0.5;
  bool enable_rho = true;
  bool enable_u = true;
  bool enable_b = true;
};

struct RunConfig {
  int n1 = 128;
  int n2 = 128;
  PhysParams phys;
  InitConfig init;
  StepConfig stepping{.dt = 0.01};
  /// Shrink steps to the CFL limit; stepping.dt is then an upper bound.
  bool auto_cfl = true;
  DiagnosticsConfig diag;
  double t_end = 1.0;
  std::string out_dir = "out";
  /// Simulated time between checkpoints; 0 disables them.
  double checkpoint_every = 0.0;
};

/// Parses the sectioned key=value format:
///
///   [grid]     n1, n2
///   [phys]     mu, lambda, gamma, linear_pressure
///   [init]     seed, epsilon, decay_rate, enable_rho, enable_u, enable_b
///   [stepping] dt, auto_cfl, scheme, filter, filter_strength, cfl_safety
///   [diag]     s, sigma, sample_interval
///   [run]      t_end, out_dir, checkpoint_every
///
/// '#' starts a comment. Unknown sections or keys and out-of-range values
/// raise ConfigError carrying the line number.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Inverse of parse_config; every key is written.
std::string format_config(const RunConfig& config);

}  // namespace mhd2d
