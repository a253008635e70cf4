#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhd2d/field.hpp"
#include "mhd2d/pressure.hpp"

namespace mhd2d {

struct LemmaTrial {
  std::string lemma;
  std::uint64_t seed = 0;
  int s0 = 1;
  /// Exponent of d1 in the sampled derivative d1^alpha1 d2^(s0-alpha1).
  int alpha1 = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs/rhs, or 0 when both vanish.
  double ratio = 0.0;
};

struct LabConfig {
  /// Nominal resolution; products are evaluated on a grid of twice this size.
  int n = 32;
  /// Random fields are supported on |k1|, |k2| <= band.
  int band = 6;
  double decay_rate = 0.5;

  /// Throws ResolutionError unless n >= 3 (s0 + band).
  void require_resolves(int s0) const;
};

/// || d^a (f g) - f d^a g ||_{L^2} against
/// ||grad f||_{H^{[s0/2]+1}} ||g||_{H^{s0-1}} + ||grad f||_{H^{s0-1}} ||g||_{H^{[s0/2]+2}}.
/// Products are formed by direct convolution of the coefficients, so the
/// fields must be band-limited enough for the product to fit on the lattice
/// (ResolutionError otherwise).
LemmaTrial commutator_measure(const ScalarField& f, const ScalarField& g, int alpha1, int alpha2);

/// |sum_i int d^a (f.grad g_i) d^a g_i| against the three-line anisotropic bound.
LemmaTrial triple_product_measure(const VectorField& f, const VectorField& g, int alpha1, int alpha2);

LemmaTrial commutator_trial(std::uint64_t seed, int s0, const LabConfig& config = {});
LemmaTrial triple_product_trial(std::uint64_t seed, int s0, const LabConfig& config = {});
/// Commutator trial with f replaced by a random constant; lhs vanishes.
LemmaTrial constant_commutator_trial(std::uint64_t seed, int s0, const LabConfig& config = {});

/// Trials with seeds derived from master_seed, in order. The first m trials
/// of an ensemble of size n > m coincide with the ensemble of size m.
std::vector<LemmaTrial> lemma_ensemble(const std::string& lemma, int s0, int trials,
                                       std::uint64_t master_seed, const LabConfig& config = {});

double max_ratio(const std::vector<LemmaTrial>& trials);

std::string lemma_csv_header();
std::string lemma_csv_row(const LemmaTrial& trial);
/// Stable digest of the rows, for reports.
std::uint64_t trial_set_hash(const std::vector<LemmaTrial>& trials);

struct RemainderBounds {
  double q_ratio = 0.0;
  double q1_ratio = 0.0;
};

/// q(rho) = int_0^rho (P'(r+1) - 1) dr and q1(rho) = int_0^rho (P'(r+1)/(r+1) - 1) dr
/// by adaptive Gauss-Kronrod quadrature.
double q_by_quadrature(const PressureLaw& law, double rho);
double q1_by_quadrature(const PressureLaw& law, double rho);

/// max |q|/rho^2 and |q1|/rho^2 over the samples; rho = 0 uses the limits
/// |P''(1)|/2 and |P''(1) - 1|/2. Throws Error for |rho| > 1/2.
RemainderBounds pressure_remainder_trial(const PressureLaw& law, const std::vector<double>& rho_samples);

}  // namespace mhd2d
