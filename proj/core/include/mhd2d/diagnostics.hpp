#pragma once

#include <array>
#include <string>
#include <vector>

#include "mhd2d/state.hpp"

namespace mhd2d {

/// w_k(t) = (1+t)^(k - sigma)
double time_weight(int k, double sigma, double t);

struct DiagnosticsConfig {
  double s = 4.0;
  double sigma = 0.25;
  double sample_interval = 0.1;

  /// Requires 0 < sigma < 1/2 and sample_interval > 0.
  void validate() const;
};

/// Squared norms at one time. Arrays indexed by k = 1..3 (slot 0 unused).
struct Snapshot {
  double t = 0.0;
  /// ||u||^2 + ||rho||^2 + ||b||^2 in H^s
  double x0 = 0.0;
  /// ||grad u||^2_{H^s}
  double grad_u = 0.0;
  /// ||d2 u||^2 + ||d2 rho||^2 + ||d2 b||^2 in H^{s-k}
  std::array<double, 4> vert{};
  /// ||grad d2 u||^2_{H^{s-k}}
  std::array<double, 4> grad_vert{};
  /// ||d2^2 rho||^2_{H^{s-1-k}}
  std::array<double, 4> rho_vv{};
  /// ||d2^2 perp_div b||^2_{H^{s-2-k}}
  std::array<double, 4> curl_b_vv{};
  /// ||d1 u1||^2_{H^{s-k}}
  std::array<double, 4> d1u1{};
  /// ||grad d1 u1||^2_{H^{s-k}}
  std::array<double, 4> grad_d1u1{};
  /// ||Omega||^2_{H^{s-k}}
  std::array<double, 4> omega{};
  /// ||u||^2 + ||b||^2 + ||rho||^2 in H^{s-1}
  double low = 0.0;
  /// ||grad u||^2_{H^{s-1}}
  double grad_u_low = 0.0;
  /// ||u2||^2 and ||grad u2||^2 in the homogeneous space of order s-2
  double u2_hom = 0.0;
  double grad_u2_hom = 0.0;
  /// ||d2 b||^2_{H^{s-1}}
  double d2b_low = 0.0;
};

Snapshot take_snapshot(const State& state, const PhysParams& params, const DiagnosticsConfig& config);

/// Energy functionals at one time. Arrays indexed by k = 1..3.
struct Functionals {
  double e0 = 0.0;
  std::array<double, 4> e{};
  std::array<double, 4> p{};
  std::array<double, 4> b{};
  std::array<double, 4> f{};
  std::array<double, 4> a{};
  double a_tilde = 0.0;
  double frak_e = 0.0;
  double frak_u = 0.0;
  /// sup w_0 (||u||^2 + ||rho||^2 + ||b||^2)_{H^s}, the first part of e0
  double sup_energy = 0.0;
  /// sup w_k ||d1 u1||^2_{H^{s-k}} + int w_k ||grad d1 u1||^2_{H^{s-k}}
  std::array<double, 4> d1u1{};
};

/// E0 + E1 + E3 + P1 + P3 + B1 + B3 + F1 + F3 + A1 + A3 + A~ + U + E.
double total_energy(const Functionals& f);

class EnergyLedger {
 public:
  explicit EnergyLedger(DiagnosticsConfig config, PhysParams params = {});

  /// Takes a snapshot of the state and extends every accumulator.
  void observe(const State& state);
  /// Same, for a precomputed snapshot. Throws unless the time increases.
  void observe(const Snapshot& snapshot);

  bool empty() const { return snapshots_.empty(); }
  const DiagnosticsConfig& config() const { return config_; }
  const std::vector<Snapshot>& snapshots() const { return snapshots_; }
  /// Functionals after each observation.
  const std::vector<Functionals>& history() const { return history_; }
  const Functionals& current() const;
  double total_energy() const { return mhd2d::total_energy(current()); }

  std::string csv_header() const;
  std::string csv_row(std::size_t i) const;
  std::string csv() const;

 private:
  double w(int k, double t) const { return time_weight(k, config_.sigma, t); }

  DiagnosticsConfig config_;
  PhysParams params_;
  std::vector<Snapshot> snapshots_;
  std::vector<Functionals> history_;
  // Running suprema and integrals that the functionals are assembled from.
  struct Parts {
    double sup_x0 = 0.0, int_x0 = 0.0, int_grad_u = 0.0;
    std::array<double, 4> sup_vert{}, int_grad_vert{}, int_rho_vv{}, int_curl_b_vv{};
    std::array<double, 4> sup_f{}, sup_d1u1{}, int_grad_d1u1{}, int_omega{};
    double int_omega_low = 0.0, sup_low = 0.0, int_grad_u_low = 0.0;
    double sup_u2 = 0.0, int_grad_u2 = 0.0;
  } parts_;
};

struct DecayFit {
  std::string quantity;
  double t0 = 0.0;
  double t1 = 0.0;
  double exponent = 0.0;
  double r_squared = 0.0;
  std::size_t samples = 0;
  /// Set when the quantity was non-positive somewhere in the window and had
  /// to be floored.
  bool degenerate = false;

  std::string report() const;
};

/// Least-squares slope of log q against log(1+t) over samples with
/// t0 <= t <= t1. Throws Error when fewer than 10 samples fall in the window.
DecayFit decay_fit(const std::vector<double>& times, const std::vector<double>& values,
                   double t0, double t1, std::string quantity = "q");

/// Fit of a named snapshot column (see EnergyLedger::csv_header).
DecayFit decay_fit(const EnergyLedger& ledger, const std::string& quantity, double t0, double t1);

/// Value of a named snapshot column.
double snapshot_value(const Snapshot& snapshot, double sigma, const std::string& name);

struct MonitorEntry {
  std::string family;
  int k = 0;
  /// Sup-type families carry a supremum in time; the others are pure integrals.
  bool sup_type = true;
  /// The bound compares against eps^2 (or eps for the rho integral).
  int eps_power = 2;
  double ratio = 0.0;
  double running_max = 0.0;
  bool pass = true;
};

/// Ratios measured/eps^p for the six bound families, evaluated on
/// functionals f. Zero over zero counts as zero.
std::vector<MonitorEntry> monitor_ratios(const Functionals& f, double epsilon, double ceiling);

/// Ratios on the latest functionals, with running maxima over the history.
std::vector<MonitorEntry> theorem_monitor(const EnergyLedger& ledger, double epsilon,
                                          double ceiling);

}  // namespace mhd2d
