#include "mhd2d/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mhd2d/error.hpp"

namespace mhd2d {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBoxArea = kTwoPi * kTwoPi;

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (&a.grid() != &b.grid() && !a.grid().same_shape(b.grid())) {
    throw Error("fields live on different grids");
  }
}

double int_pow(double base, int exponent) {
  double r = 1.0;
  for (int e = 0; e < exponent; ++e) r *= base;
  return r;
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

// ---------------------------------------------------------------- fields ---

ScalarField::ScalarField(GridPtr grid) : grid_(std::move(grid)), coeffs_(grid_->spectral_size()) {}

Complex ScalarField::mode(int k1, int k2) const {
  const Grid& g = *grid_;
  if (k2 < 0) return std::conj(mode(-k1, -k2));
  if (k1 < -g.n1() / 2 || k1 >= g.n1() / 2 || k2 > g.n2() / 2) return {};
  return coeffs_[g.index(g.row_of(k1), k2)];
}

void ScalarField::set_mode(int k1, int k2, Complex value) {
  const Grid& g = *grid_;
  if (k2 < 0) {
    set_mode(-k1, -k2, std::conj(value));
    return;
  }
  if (k1 < -g.n1() / 2 || k1 >= g.n1() / 2 || k2 > g.n2() / 2) {
    throw Error("wavenumber outside the grid lattice");
  }
  coeffs_[g.index(g.row_of(k1), k2)] = value;
  if (k2 == 0 || 2 * k2 == g.n2()) {
    if (k1 == 0 || 2 * k1 == -g.n1()) {
      coeffs_[g.index(g.row_of(k1), k2)] = value.real();
    } else {
      coeffs_[g.index(g.row_of(-k1), k2)] = std::conj(value);
    }
  }
}

void ScalarField::set_zero() { std::fill(coeffs_.begin(), coeffs_.end(), Complex{}); }

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double factor) {
  for (auto& c : coeffs_) c *= factor;
  return *this;
}

ScalarField& ScalarField::axpy(double factor, const ScalarField& other) {
  require_same_grid(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += factor * other.coeffs_[i];
  return *this;
}

void ScalarField::apply_mask() {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!grid_->retained_at(i)) coeffs_[i] = Complex{};
  }
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double factor, ScalarField a) { return a *= factor; }

VectorField::VectorField(ScalarField a, ScalarField b) : x1(std::move(a)), x2(std::move(b)) {
  require_same_grid(x1, x2);
}

VectorField& VectorField::operator+=(const VectorField& other) {
  x1 += other.x1;
  x2 += other.x2;
  return *this;
}

VectorField& VectorField::operator*=(double factor) {
  x1 *= factor;
  x2 *= factor;
  return *this;
}

VectorField& VectorField::axpy(double factor, const VectorField& other) {
  x1.axpy(factor, other.x1);
  x2.axpy(factor, other.x2);
  return *this;
}

// -------------------------------------------------------------- calculus ---

ScalarField mixed_derivative(const ScalarField& f, int a1, int a2) {
  if (a1 < 0 || a2 < 0) throw Error("derivative order must be nonnegative");
  const Grid& g = f.grid();
  ScalarField out(f.grid_ptr());
  // i^(a1+a2) is applied as a quarter-turn rotation rather than a complex product.
  const int quarter = (a1 + a2) % 4;
  auto rotate = [quarter](Complex z) {
    switch (quarter) {
      case 1: return Complex(-z.imag(), z.real());
      case 2: return -z;
      case 3: return Complex(z.imag(), -z.real());
      default: return z;
    }
  };
  auto src = f.coeffs();
  auto dst = out.coeffs();
  for (int i = 0; i < g.n1(); ++i) {
    const int k1 = g.k1(i);
    // Odd derivatives of a Nyquist mode have no real-valued representation.
    if ((a1 % 2 == 1) && 2 * k1 == -g.n1()) continue;
    const double p1 = int_pow(double(k1), a1);
    for (int j = 0; j < g.nh(); ++j) {
      if ((a2 % 2 == 1) && 2 * j == g.n2()) continue;
      const double p2 = int_pow(double(j), a2);
      const std::size_t idx = g.index(i, j);
      dst[idx] = rotate((p1 * p2) * src[idx]);
    }
  }
  return out;
}

ScalarField derivative(const ScalarField& f, Axis axis, int order) {
  if (order < 0) throw Error("derivative order must be nonnegative");
  return axis == Axis::x1 ? mixed_derivative(f, order, 0) : mixed_derivative(f, 0, order);
}

VectorField gradient(const ScalarField& f) {
  return {derivative(f, Axis::x1), derivative(f, Axis::x2)};
}

ScalarField divergence(const VectorField& v) {
  return derivative(v.x1, Axis::x1) + derivative(v.x2, Axis::x2);
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  ScalarField out(f.grid_ptr());
  auto src = f.coeffs();
  auto dst = out.coeffs();
  for (int i = 0; i < g.n1(); ++i) {
    for (int j = 0; j < g.nh(); ++j) {
      const double kk = double(g.k1(i)) * g.k1(i) + double(j) * j;
      dst[g.index(i, j)] = -kk * src[g.index(i, j)];
    }
  }
  return out;
}

VectorField perp_grad(const ScalarField& f) {
  return {derivative(f, Axis::x2), -1.0 * derivative(f, Axis::x1)};
}

ScalarField perp_div(const VectorField& v) {
  return derivative(v.x1, Axis::x2) - derivative(v.x2, Axis::x1);
}

// ------------------------------------------------------------ transforms ---

RealArray to_physical(const ScalarField& f) {
  RealArray out(f.grid().physical_size());
  f.grid().inverse(f.coeffs().data(), out.data());
  return out;
}

ScalarField from_physical(const GridPtr& grid, const RealArray& values) {
  if (values.size() != grid->physical_size()) throw Error("physical array has wrong size");
  ScalarField out(grid);
  grid->forward(values.data(), out.coeffs().data());
  return out;
}

ScalarField from_physical_dealiased(const GridPtr& grid, const RealArray& values) {
  ScalarField out = from_physical(grid, values);
  out.apply_mask();
  return out;
}

ScalarField product(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f, g);
  RealArray a = to_physical(f);
  const RealArray b = to_physical(g);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  return from_physical_dealiased(f.grid_ptr(), a);
}

// ----------------------------------------------------------------- norms ---

double sobolev_norm_sq(const ScalarField& f, double s) {
  const Grid& g = f.grid();
  const auto& weight = g.sobolev_weights(s);
  auto c = f.coeffs();
  double sum = 0.0;
  for (int i = 0; i < g.n1(); ++i) {
    for (int j = 0; j < g.nh(); ++j) {
      const std::size_t idx = g.index(i, j);
      sum += g.hermitian_weight(j) * weight[idx] * std::norm(c[idx]);
    }
  }
  return kBoxArea * sum;
}

double sobolev_norm(const ScalarField& f, double s) { return std::sqrt(sobolev_norm_sq(f, s)); }

double homogeneous_norm_sq(const ScalarField& f, double s) {
  const Grid& g = f.grid();
  auto c = f.coeffs();
  double sum = 0.0;
  for (int i = 0; i < g.n1(); ++i) {
    for (int j = 0; j < g.nh(); ++j) {
      const double kk = double(g.k1(i)) * g.k1(i) + double(j) * j;
      if (kk == 0.0) continue;
      const std::size_t idx = g.index(i, j);
      sum += g.hermitian_weight(j) * std::pow(kk, s) * std::norm(c[idx]);
    }
  }
  return kBoxArea * sum;
}

double homogeneous_norm(const ScalarField& f, double s) { return std::sqrt(homogeneous_norm_sq(f, s)); }

double aniso_norm_sq(const ScalarField& f, int vertical_order, double m) {
  const Grid& g = f.grid();
  const auto& weight = g.sobolev_weights(m);
  auto c = f.coeffs();
  double sum = 0.0;
  for (int i = 0; i < g.n1(); ++i) {
    for (int j = 0; j < g.nh(); ++j) {
      if ((vertical_order % 2 == 1) && 2 * j == g.n2()) continue;
      const std::size_t idx = g.index(i, j);
      const double k2pow = int_pow(double(j), 2 * vertical_order);
      sum += g.hermitian_weight(j) * weight[idx] * k2pow * std::norm(c[idx]);
    }
  }
  return kBoxArea * sum;
}

double aniso_norm(const ScalarField& f, int vertical_order, double m) {
  return std::sqrt(aniso_norm_sq(f, vertical_order, m));
}

double sobolev_norm_sq(const VectorField& v, double s) {
  return sobolev_norm_sq(v.x1, s) + sobolev_norm_sq(v.x2, s);
}

double gradient_norm_sq(const ScalarField& f, double s) {
  // |k|^2 (1+|k|^2)^s summed; identical to ||d1 f||^2 + ||d2 f||^2 in H^s.
  const Grid& g = f.grid();
  const auto& weight = g.sobolev_weights(s);
  auto c = f.coeffs();
  double sum = 0.0;
  for (int i = 0; i < g.n1(); ++i) {
    const bool nyq1 = 2 * g.k1(i) == -g.n1();
    for (int j = 0; j < g.nh(); ++j) {
      const bool nyq2 = 2 * j == g.n2();
      const double kk = (nyq1 ? 0.0 : double(g.k1(i)) * g.k1(i)) + (nyq2 ? 0.0 : double(j) * j);
      const std::size_t idx = g.index(i, j);
      sum += g.hermitian_weight(j) * weight[idx] * kk * std::norm(c[idx]);
    }
  }
  return kBoxArea * sum;
}

double gradient_norm_sq(const VectorField& v, double s) {
  return gradient_norm_sq(v.x1, s) + gradient_norm_sq(v.x2, s);
}

double inner_product(const ScalarField& f, const ScalarField& h) {
  require_same_grid(f, h);
  const Grid& g = f.grid();
  auto a = f.coeffs();
  auto b = h.coeffs();
  double sum = 0.0;
  for (int i = 0; i < g.n1(); ++i) {
    for (int j = 0; j < g.nh(); ++j) {
      const std::size_t idx = g.index(i, j);
      sum += g.hermitian_weight(j) * (a[idx] * std::conj(b[idx])).real();
    }
  }
  return kBoxArea * sum;
}

double mean(const ScalarField& f) { return f.coeffs()[0].real(); }

double max_abs_coeff(const ScalarField& f) {
  double m = 0.0;
  for (const auto& c : f.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

double max_abs_physical(const ScalarField& f) {
  const RealArray v = to_physical(f);
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double grid_integral(const Grid& grid, const RealArray& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return kBoxArea * sum / static_cast<double>(grid.physical_size());
}

// ---------------------------------------------------------------- random ---

ScalarField random_smooth_field(const GridPtr& grid, std::uint64_t seed, double amplitude,
                                double decay_rate, bool zero_mean, int max_wavenumber) {
  if (amplitude < 0.0) throw Error("random_smooth_field: amplitude must be nonnegative");
  if (!(decay_rate > 0.0)) throw Error("random_smooth_field: decay_rate must be positive");
  ScalarField out(grid);
  if (amplitude == 0.0) return out;

  std::mt19937_64 rng(seed);
  const Grid& g = *grid;
  // Deterministic traversal of the stored half plane; each retained mode
  // consumes exactly two draws so the stream layout never depends on the mask.
  for (int j = 0; j < g.nh(); ++j) {
    for (int i = 0; i < g.n1(); ++i) {
      const double r = unit_uniform(rng);
      const double phase = kTwoPi * unit_uniform(rng);
      const int k1 = g.k1(i);
      const int k2 = g.k2(j);
      if (!g.retained(k1, k2)) continue;
      if (max_wavenumber >= 0 && (std::abs(k1) > max_wavenumber || k2 > max_wavenumber)) continue;
      // On the k2 = 0 column only k1 > 0 is free; k1 < 0 follows by symmetry.
      if (k2 == 0 && k1 < 0) continue;
      const double bound = amplitude * std::exp(-decay_rate * std::hypot(double(k1), double(k2)));
      if (k1 == 0 && k2 == 0) {
        if (!zero_mean) out.set_mode(0, 0, bound * (2.0 * r - 1.0));
        continue;
      }
      out.set_mode(k1, k2, std::polar(bound * r, phase));
    }
  }
  return out;
}

}  // namespace mhd2d
