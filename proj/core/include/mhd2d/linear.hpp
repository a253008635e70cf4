#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mhd2d/state.hpp"

namespace mhd2d {

using LComplex = std::complex<long double>;
using Matrix5c = Eigen::Matrix<std::complex<double>, 5, 5>;
using Vector5c = Eigen::Matrix<std::complex<double>, 5, 1>;
using Matrix4lc = Eigen::Matrix<LComplex, 4, 4>;

/// Linearized operator at one wavenumber, acting on (rho, u1, u2, b1, b2).
struct ModeMatrix {
  int k1 = 0;
  int k2 = 0;
  double mu = 1.0;
  double lambda = 0.0;
  Matrix5c full;
  /// Restriction to {k.b = 0} in the basis (rho, u1, u2, b_kept), where the
  /// other b component is eliminated through the constraint.
  Matrix4lc reduced;
  /// Index (3 or 4) of the b component kept in the reduced basis.
  int kept_b = 3;
  int constraint_dim = 4;
};

/// Throws Error for k = (0,0) or invalid (mu, lambda).
ModeMatrix mode_matrix(int k1, int k2, double mu = 1.0, double lambda = 0.0);

struct ModeSpectrum {
  int k1 = 0;
  int k2 = 0;
  /// Sorted by descending real part.
  std::vector<std::complex<double>> eigenvalues;
  double spectral_abscissa = 0.0;
  int kernel_dim = 0;
};

/// Eigenvalues of the constraint-reduced matrix, computed in extended
/// precision. An abscissa within 1e-13 ||A|| of zero is reported as 0.
ModeSpectrum mode_spectrum(int k1, int k2, double mu = 1.0, double lambda = 0.0);

/// Max |(l^2 + |k|^2 l + |k|^2)^2 - k1^2 |k|^2| over the eigenvalues of the
/// reduced matrix (mu = 1, lambda = 0).
double fourth_order_symbol_check(int k1, int k2);

struct DampingRow {
  int k1 = 0;
  int k2 = 0;
  double abscissa = 0.0;
  int kernel_dim = 0;
};

/// Every k with |k1|, |k2| <= kmax, k != 0, in lexicographic order.
std::vector<DampingRow> damping_map(int kmax, double mu = 1.0, double lambda = 0.0);
std::string damping_csv(const std::vector<DampingRow>& rows);

/// Max deviation of the (rho, u2) block at k = (0, k2) from
/// [[0, -i k2], [-i k2, -(mu+lambda) k2^2]], including its couplings to the
/// remaining components, which must vanish.
double wave_pair_check(int k2, double mu = 1.0, double lambda = 0.0);

/// exp(t A) v for the full 5x5 matrix.
Vector5c evolve_mode(const ModeMatrix& m, const Vector5c& v, double t);

/// (rho, u1, u2, b1, b2) coefficients at wavenumber k.
Vector5c mode_amplitudes(const State& state, int k1, int k2);
/// Sets the coefficients at k and -k so the fields stay real.
void set_mode_amplitudes(State& state, int k1, int k2, const Vector5c& v);

}  // namespace mhd2d
