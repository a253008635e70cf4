#pragma once

#include "mhd2d/field.hpp"
#include "mhd2d/pressure.hpp"

namespace mhd2d {

struct PhysParams {
  double mu = 1.0;
  double lambda = 0.0;
  PressureLaw pressure{1.4};

  /// Throws unless mu > 0 and mu + lambda > 0.
  void validate() const;
  bool normalized() const { return mu == 1.0 && lambda == 0.0; }
};

/// Perturbation (rho, u, b) about rho_total = 1, u = 0, B = e2.
struct State {
  ScalarField rho;
  VectorField u;
  VectorField b;
  double time = 0.0;

  explicit State(const GridPtr& grid) : rho(grid), u(grid), b(grid) {}

  const Grid& grid() const { return rho.grid(); }
  const GridPtr& grid_ptr() const { return rho.grid_ptr(); }

  State& axpy(double factor, const State& other);
};

/// Time derivative of the five fields.
struct Tendency {
  ScalarField rho;
  VectorField u;
  VectorField b;

  explicit Tendency(const GridPtr& grid) : rho(grid), u(grid), b(grid) {}
};

/// Throws SmallnessViolation when max |rho| on the grid exceeds 1/2.
void check_smallness(const State& state);

/// ||div b||_{L^2}
double divergence_norm(const VectorField& b);

}  // namespace mhd2d
