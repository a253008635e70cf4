#pragma once

namespace mhd2d {

/// Barotropic pressure law P(rho_total) = (rho_total^gamma - 1) / gamma.
///
/// gamma = 1 is the linear law P = rho_total - 1. Every member satisfies
/// P'(1) = 1.
class PressureLaw {
 public:
  explicit PressureLaw(double gamma = 1.4);
  static PressureLaw linear() { return PressureLaw(1.0); }

  double gamma() const { return gamma_; }
  bool is_linear() const { return gamma_ == 1.0; }

  double pressure(double rho_total) const;
  double derivative(double rho_total) const;
  double second_derivative(double rho_total) const;

  /// q(rho) = P(rho+1) - P(1) - rho, quadratically small near rho = 0.
  double q(double rho) const;
  /// q1(rho) = int_0^rho (P'(r+1)/(r+1) - 1) dr.
  double q1(double rho) const;

 private:
  double gamma_;
};

}  // namespace mhd2d
