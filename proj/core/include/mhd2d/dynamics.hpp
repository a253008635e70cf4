#pragma once

#include "mhd2d/spectral.hpp"
#include "mhd2d/state.hpp"

namespace mhd2d {

struct RhsOptions {
  /// Include mu*Lap u + lambda*grad div u. The integrating-factor stepper
  /// turns this off and applies the viscous semigroup exactly instead.
  bool viscous = true;
  /// Include every nonlinear term. Off leaves the linearization about the
  /// equilibrium (test hook).
  bool nonlinear = true;
};

/// Right-hand side of the perturbation system in its split form:
///   rho_t = -div u - div(rho u)
///   u_t   = mu Lap u + lambda grad div u + (perp_div b, 0) - grad P(rho+1)/(rho+1)
///           - u.grad u - rho/(rho+1) (mu Lap u + lambda grad div u)
///           + b.grad b/(rho+1) - grad|b|^2/(2(rho+1)) - rho/(rho+1) (perp_div b, 0)
///   b_t   = perp_grad u1 - u.grad b + b.grad u - b div u
/// Products are dealiased; 1/(rho+1) is evaluated on the collocation grid.
/// Throws SmallnessViolation when min(1+rho) <= 1/4.
Tendency rhs(const State& state, const PhysParams& params, const RhsOptions& options = {});

/// Same system written in primitive form,
///   u_t = -u.grad u + (mu Lap u + lambda grad div u - grad P + (perp_div b, 0)
///                      + b.grad b - grad|b|^2/2) / (rho+1),
/// used to cross-check the split assembly.
Tendency rhs_primitive(const State& state, const PhysParams& params);

/// Omega = perp_div b - d1 P - (1/2) d1 |b|^2 + b.grad b1, with P = P(rho+1).
ScalarField omega(const State& state, const PhysParams& params);

/// Full right-hand side of the Omega evolution equation (valid for mu = 1,
/// lambda = 0 and div b = 0). Throws otherwise.
ScalarField omega_rhs(const State& state, const PhysParams& params);

/// Residual of the u1 equation rewritten through Omega:
///   u1_t + u.grad u1 - Lap u1 - Omega + rho/(rho+1) (Lap u1 + Omega),
/// evaluated with u1_t taken from rhs(). Vanishes up to aliasing error.
ScalarField u1_omega_residual(const State& state, const PhysParams& params);

struct L2Ledger {
  /// (1/2)(||sqrt(rho+1) u||^2 + ||rho||^2 + ||b||^2)
  double energy = 0.0;
  /// mu ||grad u||^2 + lambda ||div u||^2
  double dissipation = 0.0;
  /// -int (u.grad rho) rho - int rho^2 div u
  double i2 = 0.0;
  /// int (grad rho - grad P) . u
  double i3 = 0.0;
};

/// Instantaneous L^2 energy balance: dE/dt + D = I2 + I3 along solutions.
L2Ledger l2_ledger(const State& state, const PhysParams& params);

struct PhysicalFields {
  RealArray rho_total;
  RealArray u1;
  RealArray u2;
  RealArray b1_total;
  RealArray b2_total;
};

/// Adds the equilibrium back: rho_total = rho + 1, B = b + e2.
PhysicalFields reconstruct_physical(const State& state);

/// x1 -> -x1 with u1 -> -u1, b1 -> -b1; maps solutions to solutions.
State reflect_x1(const State& state);

/// Replaces bhat by (I - k k^T/|k|^2) bhat and zeroes the mean of b.
void project_divergence_free(VectorField& b);

}  // namespace mhd2d
