#pragma once

#include <cstdint>

#include "mhd2d/field.hpp"

namespace mhd2d {

enum class Axis { x1 = 1, x2 = 2 };

// Spectral calculus. Every function is pure; results are fresh fields.

/// Multiplies each coefficient by (i k_axis)^order.
ScalarField derivative(const ScalarField& f, Axis axis, int order = 1);
/// Mixed derivative d1^a1 d2^a2.
ScalarField mixed_derivative(const ScalarField& f, int a1, int a2);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
/// (d2 f, -d1 f)
VectorField perp_grad(const ScalarField& f);
/// d2 v1 - d1 v2
ScalarField perp_div(const VectorField& v);

RealArray to_physical(const ScalarField& f);
/// Forward transform without masking.
ScalarField from_physical(const GridPtr& grid, const RealArray& values);
/// Forward transform followed by the two-thirds mask.
ScalarField from_physical_dealiased(const GridPtr& grid, const RealArray& values);

/// Pseudo-spectral product with two-thirds dealiasing.
ScalarField product(const ScalarField& f, const ScalarField& g);

/// ( (2pi)^2 sum_k (1+|k|^2)^s |fhat_k|^2 )^(1/2). Any real s is accepted;
/// negative indices give the dual norms used by the lowest-order ledger terms.
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm_sq(const ScalarField& f, double s);
/// Homogeneous norm ( (2pi)^2 sum_{k != 0} |k|^(2s) |fhat_k|^2 )^(1/2).
double homogeneous_norm(const ScalarField& f, double s);
double homogeneous_norm_sq(const ScalarField& f, double s);
/// sobolev_norm(d2^vertical_order f, m)
double aniso_norm(const ScalarField& f, int vertical_order, double m);
double aniso_norm_sq(const ScalarField& f, int vertical_order, double m);
double sobolev_norm_sq(const VectorField& v, double s);
/// sum_{i,j} ||d_j v_i||^2_{H^s}
double gradient_norm_sq(const VectorField& v, double s);
double gradient_norm_sq(const ScalarField& f, double s);

/// L^2 inner product (2pi)^2 sum_k fhat_k conj(ghat_k) (real for real fields).
double inner_product(const ScalarField& f, const ScalarField& g);
/// Spatial mean = fhat_{(0,0)}.
double mean(const ScalarField& f);
double max_abs_coeff(const ScalarField& f);
double max_abs_physical(const ScalarField& f);
/// (2pi)^2/(n1 n2) sum over collocation points.
double grid_integral(const Grid& grid, const RealArray& values);

/// Deterministic random real field with |fhat_k| <= amplitude * exp(-decay_rate |k|),
/// restricted to retained modes and, when max_wavenumber >= 0, to
/// |k1|,|k2| <= max_wavenumber.
ScalarField random_smooth_field(const GridPtr& grid, std::uint64_t seed, double amplitude,
                                double decay_rate = 0.5, bool zero_mean = true,
                                int max_wavenumber = -1);

/// Samples a callable f(x1, x2) on the collocation grid and transforms it.
template <class F>
ScalarField sample(const GridPtr& grid, F&& f) {
  RealArray values(grid->physical_size());
  for (int i = 0; i < grid->n1(); ++i) {
    for (int j = 0; j < grid->n2(); ++j) {
      values[static_cast<std::size_t>(i) * grid->n2() + j] = f(grid->x1(i), grid->x2(j));
    }
  }
  return from_physical(grid, values);
}

}  // namespace mhd2d
