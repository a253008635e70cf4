#pragma once

#include <span>

#include "mhd2d/grid.hpp"

namespace mhd2d {

/// Real scalar field on a Grid, held by its Fourier coefficients.
class ScalarField {
 public:
  explicit ScalarField(GridPtr grid);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  /// Coefficient at any wavenumber; k2 < 0 is served by Hermitian symmetry.
  /// Wavenumbers outside the lattice read as zero.
  Complex mode(int k1, int k2) const;
  /// Sets fhat_k and keeps fhat_{-k} = conj(fhat_k).
  void set_mode(int k1, int k2, Complex value);

  void set_zero();
  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double factor);
  /// this += factor * other
  ScalarField& axpy(double factor, const ScalarField& other);

  /// Zeroes every coefficient outside the dealiasing mask.
  void apply_mask();

 private:
  GridPtr grid_;
  ComplexArray coeffs_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double factor, ScalarField a);

struct VectorField {
  ScalarField x1;
  ScalarField x2;

  explicit VectorField(const GridPtr& grid) : x1(grid), x2(grid) {}
  VectorField(ScalarField a, ScalarField b);

  const Grid& grid() const { return x1.grid(); }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator*=(double factor);
  VectorField& axpy(double factor, const VectorField& other);
};

}  // namespace mhd2d
