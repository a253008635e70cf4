#include "mhd2d/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mhd2d/error.hpp"

namespace mhd2d {

namespace {

// The FFTW planner is not re-entrant; execution with new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

GridPtr Grid::make(int n1, int n2) {
  if (n1 < 8 || n2 < 8 || n1 % 2 != 0 || n2 % 2 != 0) {
    throw Error("grid dimensions must be even and >= 8");
  }
  return GridPtr(new Grid(n1, n2));
}

Grid::Grid(int n1, int n2) : n1_(n1), n2_(n2), mask_(spectral_size()) {
  for (int i = 0; i < n1_; ++i) {
    for (int j = 0; j < nh(); ++j) {
      mask_[index(i, j)] = retained(k1(i), k2(j)) ? 1 : 0;
    }
  }

  RealArray real(physical_size());
  ComplexArray spec(spectral_size());
  auto* cspec = reinterpret_cast<fftw_complex*>(spec.data());
  // FFTW_ESTIMATE keeps plan selection, and therefore round-off, identical
  // from run to run.
  std::lock_guard lock(planner_mutex());
  plan_r2c_ = fftw_plan_dft_r2c_2d(n1_, n2_, real.data(), cspec, FFTW_ESTIMATE);
  plan_c2r_ = fftw_plan_dft_c2r_2d(n1_, n2_, cspec, real.data(), FFTW_ESTIMATE);
  if (plan_r2c_ == nullptr || plan_c2r_ == nullptr) {
    throw Error("FFTW plan creation failed");
  }
}

Grid::~Grid() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_r2c_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
}

double Grid::x1(int i1) const {
  const double x = 2.0 * std::numbers::pi * i1 / n1_;
  return 2 * i1 < n1_ ? x : x - 2.0 * std::numbers::pi;
}

double Grid::x2(int i2) const {
  const double x = 2.0 * std::numbers::pi * i2 / n2_;
  return 2 * i2 < n2_ ? x : x - 2.0 * std::numbers::pi;
}

const std::vector<double>& Grid::sobolev_weights(double s) const {
  std::lock_guard lock(weight_mutex_);
  auto it = weight_cache_.find(s);
  if (it != weight_cache_.end()) return *it->second;
  auto table = std::make_unique<std::vector<double>>(spectral_size());
  for (int i = 0; i < n1_; ++i) {
    for (int j = 0; j < nh(); ++j) {
      const double kk = double(k1(i)) * k1(i) + double(k2(j)) * k2(j);
      (*table)[index(i, j)] = std::pow(1.0 + kk, s);
    }
  }
  auto& ref = *table;
  weight_cache_.emplace(s, std::move(table));
  return ref;
}

void Grid::forward(const double* in, Complex* out) const {
  // r2c does not modify its input, despite the non-const signature.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_r2c_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / static_cast<double>(physical_size());
  for (std::size_t i = 0; i < spectral_size(); ++i) out[i] *= scale;
}

void Grid::inverse(const Complex* in, double* out) const {
  // c2r destroys its input.
  thread_local ComplexArray scratch;
  scratch.assign(in, in + spectral_size());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_c2r_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace mhd2d
