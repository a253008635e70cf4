#pragma once

#include <cmath>
#include <numbers>

#include "mhd2d/field.hpp"
#include "mhd2d/spectral.hpp"
#include "mhd2d/state.hpp"

namespace testing {

inline constexpr double kPi = std::numbers::pi;

/// max |fhat_k - ghat_k| over the stored half plane.
inline double coeff_distance(const mhd2d::ScalarField& f, const mhd2d::ScalarField& g) {
  double worst = 0.0;
  auto a = f.coeffs();
  auto b = g.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double coeff_distance(const mhd2d::VectorField& f, const mhd2d::VectorField& g) {
  return std::max(coeff_distance(f.x1, g.x1), coeff_distance(f.x2, g.x2));
}

inline bool bit_identical(const mhd2d::ScalarField& f, const mhd2d::ScalarField& g) {
  auto a = f.coeffs();
  auto b = g.coeffs();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

inline bool bit_identical(const mhd2d::State& x, const mhd2d::State& y) {
  return x.time == y.time && bit_identical(x.rho, y.rho) && bit_identical(x.u.x1, y.u.x1) &&
         bit_identical(x.u.x2, y.u.x2) && bit_identical(x.b.x1, y.b.x1) && bit_identical(x.b.x2, y.b.x2);
}

}  // namespace testing
