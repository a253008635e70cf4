#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mhd2d/error.hpp"
#include "mhd2d/linear.hpp"

using namespace mhd2d;

namespace {

using C = std::complex<double>;
const C I(0.0, 1.0);

bool contains(const std::vector<C>& values, C target, double tol) {
  return std::any_of(values.begin(), values.end(), [&](C v) { return std::abs(v - target) < tol; });
}

int count_near(const std::vector<C>& values, C target, double tol) {
  return static_cast<int>(std::count_if(values.begin(), values.end(), [&](C v) { return std::abs(v - target) < tol; }));
}

}  // namespace

TEST_CASE("mode matrix at k = (1,0)") {
  const ModeMatrix m = mode_matrix(1, 0);
  // (rho, u1, b2) block
  const int idx[3] = {0, 1, 4};
  const C expected[3][3] = {{0.0, -I, 0.0}, {-I, -1.0, -I}, {0.0, -I, 0.0}};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) CHECK(std::abs(m.full(idx[r], idx[c]) - expected[r][c]) < 1e-15);
  }
  CHECK(std::abs(m.full(2, 2) + 1.0) < 1e-15);
  for (int c = 0; c < 5; ++c) {
    if (c != 2) CHECK(std::abs(m.full(2, c)) == 0.0);
  }
}

TEST_CASE("mode matrix at k = (0,1) splits into two companion blocks") {
  const ModeMatrix m = mode_matrix(0, 1);
  // (u1, b1): [[-1, -i], [-i, 0]] has characteristic polynomial l^2 + l + 1
  const C tr = m.full(1, 1) + m.full(3, 3);
  const C det = m.full(1, 1) * m.full(3, 3) - m.full(1, 3) * m.full(3, 1);
  CHECK(std::abs(tr + 1.0) < 1e-15);
  CHECK(std::abs(det - 1.0) < 1e-15);
  const C tr2 = m.full(0, 0) + m.full(2, 2);
  const C det2 = m.full(0, 0) * m.full(2, 2) - m.full(0, 2) * m.full(2, 0);
  CHECK(std::abs(tr2 + 1.0) < 1e-15);
  CHECK(std::abs(det2 - 1.0) < 1e-15);
}

TEST_CASE("the constraint subspace is invariant") {
  for (int k1 = -4; k1 <= 4; ++k1) {
    for (int k2 = -4; k2 <= 4; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const ModeMatrix m = mode_matrix(k1, k2);
      // Any vector with k.b = 0 must be mapped to one with k.(Ab) = 0.
      for (int trial = 0; trial < 3; ++trial) {
        Vector5c v;
        v << C(1.0, trial), C(0.5, -1.0), C(-0.3, 0.2 * trial), C(double(k2), 0.0), C(double(-k1), 0.0);
        const Vector5c w = m.full * v;
        CHECK(std::abs(double(k1) * w(3) + double(k2) * w(4)) < 1e-14 * (1 + w.norm()));
      }
    }
  }
}

TEST_CASE("mode_matrix rejects the zero wavenumber and bad viscosity") {
  CHECK_THROWS_AS(mode_matrix(0, 0), Error);
  CHECK_THROWS_AS(mode_matrix(1, 1, 0.0, 0.0), Error);
  CHECK_THROWS_AS(mode_matrix(1, 1, 1.0, -1.5), Error);
}

TEST_CASE("spectrum at k = (0,1)") {
  const ModeSpectrum s = mode_spectrum(0, 1);
  const C root(-0.5, std::sqrt(3.0) / 2);
  REQUIRE(s.eigenvalues.size() == 4);
  CHECK(count_near(s.eigenvalues, root, 1e-12) == 2);
  CHECK(count_near(s.eigenvalues, std::conj(root), 1e-12) == 2);
  CHECK(s.spectral_abscissa == -0.5);
  CHECK(s.kernel_dim == 0);
}

TEST_CASE("spectrum at k = (1,0)") {
  const ModeSpectrum s = mode_spectrum(1, 0);
  REQUIRE(s.eigenvalues.size() == 4);
  CHECK(contains(s.eigenvalues, 0.0, 1e-12));
  CHECK(contains(s.eigenvalues, C(-0.5, std::sqrt(7.0) / 2), 1e-12));
  CHECK(contains(s.eigenvalues, C(-0.5, -std::sqrt(7.0) / 2), 1e-12));
  CHECK(contains(s.eigenvalues, -1.0, 1e-12));
  CHECK(s.spectral_abscissa == 0.0);
  CHECK(s.kernel_dim == 1);
}

TEST_CASE("k = (0,2) is strictly damped") {
  const ModeSpectrum s = mode_spectrum(0, 2);
  for (C l : s.eigenvalues) CHECK(l.real() < 0.0);
  CHECK(s.spectral_abscissa < 0.0);
}

TEST_CASE("eigenvalues sum to the trace of the reduced matrix") {
  for (int k1 = -5; k1 <= 5; ++k1) {
    for (int k2 = 0; k2 <= 5; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const ModeSpectrum s = mode_spectrum(k1, k2);
      C sum = 0.0;
      for (C l : s.eigenvalues) sum += l;
      const double k2sq = double(k1) * k1 + double(k2) * k2;
      CHECK(std::abs(sum + 2.0 * k2sq) < 1e-12 * (1 + k2sq));
      const auto trace = mode_matrix(k1, k2).reduced.trace();
      CHECK(std::abs(C(double(trace.real()), double(trace.imag())) - sum) < 1e-12 * (1 + k2sq));
    }
  }
}

TEST_CASE("fourth-order symbol identity") {
  CHECK(fourth_order_symbol_check(0, 1) < 1e-12);
  CHECK(fourth_order_symbol_check(1, 0) < 1e-12);
  CHECK(fourth_order_symbol_check(1, 1) < 1e-10);
  CHECK(fourth_order_symbol_check(7, 3) < 1e-10);
}

TEST_CASE("damping map on the unit box") {
  const std::vector<DampingRow> rows = damping_map(1);
  CHECK(rows.size() == 8);
  for (const DampingRow& r : rows) {
    if (r.k2 == 0) {
      CHECK(r.abscissa == 0.0);
      CHECK(r.kernel_dim == 1);
    } else {
      CHECK(r.abscissa < 0.0);
    }
    if (r.k1 == 0 && r.k2 == 1) CHECK(r.abscissa == -0.5);
  }
  const std::string csv = damping_csv(rows);
  CHECK(csv.find("k1,k2") == 0);
}

TEST_CASE("wave pair blocks") {
  CHECK(wave_pair_check(1) == 0.0);
  CHECK(wave_pair_check(2) < 1e-15);
  const ModeMatrix m2 = mode_matrix(0, 2);
  const C tr = m2.full(0, 0) + m2.full(2, 2);
  const C det = m2.full(0, 0) * m2.full(2, 2) - m2.full(0, 2) * m2.full(2, 0);
  CHECK(std::abs(tr + 4.0) < 1e-15);
  CHECK(std::abs(det - 4.0) < 1e-15);

  // k = (0,3): l^2 + 9 l + 9
  const ModeSpectrum s = mode_spectrum(0, 3);
  const double d = std::sqrt(81.0 - 36.0);
  CHECK(contains(s.eigenvalues, (-9.0 + d) / 2, 1e-12));
  CHECK(contains(s.eigenvalues, (-9.0 - d) / 2, 1e-12));
  CHECK_THROWS_AS(wave_pair_check(0), Error);
}

TEST_CASE("mode amplitudes round trip and evolve by the exponential") {
  const GridPtr g = Grid::make(16, 16);
  State s(g);
  Vector5c v;
  v << C(0.1, 0.2), C(-0.3, 0.0), C(0.0, 0.4), C(0.5, -0.1), C(-0.5, 0.1);
  set_mode_amplitudes(s, 1, 1, v);
  CHECK((mode_amplitudes(s, 1, 1) - v).norm() == 0.0);
  CHECK((mode_amplitudes(s, -1, -1) - v.conjugate()).norm() == 0.0);

  const ModeMatrix m = mode_matrix(0, 1);
  Vector5c e = Vector5c::Zero();
  e(1) = 1.0;
  const Vector5c half = evolve_mode(m, e, 0.5);
  CHECK((evolve_mode(m, half, 0.5) - evolve_mode(m, e, 1.0)).norm() < 1e-14);
}
