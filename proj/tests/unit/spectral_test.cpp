#include <doctest.h>

#include <cmath>

#include "mhd2d/error.hpp"
#include "mhd2d/grid.hpp"
#include "mhd2d/spectral.hpp"
#include "support.hpp"

using namespace mhd2d;
using testing::coeff_distance;
using testing::kPi;

namespace {

ScalarField on(const GridPtr& g, auto f) { return sample(g, f); }

}  // namespace

TEST_CASE("grid rejects odd or tiny sizes and keeps the mean mode") {
  CHECK_THROWS_AS(Grid::make(6, 16), Error);
  CHECK_THROWS_AS(Grid::make(16, 15), Error);
  const GridPtr g = Grid::make(24, 12);
  CHECK(g->retained(0, 0));
  CHECK(g->retained(8, 4));
  CHECK_FALSE(g->retained(9, 0));
  CHECK_FALSE(g->retained(0, 5));
  CHECK(g->x1(0) == 0.0);
  CHECK(g->x1(12) == doctest::Approx(-kPi));
}

TEST_CASE("derivative of an exponential mode") {
  const GridPtr g = Grid::make(16, 16);
  ScalarField f(g);
  f.set_mode(1, 0, 1.0);
  const ScalarField d = derivative(f, Axis::x1);
  CHECK(std::abs(d.mode(1, 0) - Complex(0.0, 1.0)) == 0.0);
  CHECK(std::abs(d.mode(-1, 0) - Complex(0.0, -1.0)) == 0.0);
}

TEST_CASE("derivative of a constant vanishes") {
  const GridPtr g = Grid::make(16, 16);
  ScalarField one(g);
  one.set_mode(0, 0, 1.0);
  for (Axis a : {Axis::x1, Axis::x2}) {
    for (int order = 1; order <= 3; ++order) CHECK(max_abs_coeff(derivative(one, a, order)) == 0.0);
  }
}

TEST_CASE("second x2 derivative of cos 2x2") {
  const GridPtr g = Grid::make(16, 16);
  const ScalarField f = on(g, [](double, double y) { return std::cos(2 * y); });
  const ScalarField expected = -4.0 * f;
  CHECK(coeff_distance(derivative(f, Axis::x2, 2), expected) < 1e-13);
}

TEST_CASE("derivative is linear") {
  const GridPtr g = Grid::make(32, 32);
  const ScalarField f = random_smooth_field(g, 3, 1.0);
  const ScalarField h = random_smooth_field(g, 4, 1.0);
  const ScalarField lhs = derivative(2.0 * f + (-3.0) * h, Axis::x2, 2);
  const ScalarField rhs = 2.0 * derivative(f, Axis::x2, 2) + (-3.0) * derivative(h, Axis::x2, 2);
  CHECK(coeff_distance(lhs, rhs) < 1e-14);
}

TEST_CASE("perp_grad examples") {
  const GridPtr g = Grid::make(16, 16);
  const VectorField a = perp_grad(on(g, [](double x, double) { return std::sin(x); }));
  CHECK(max_abs_coeff(a.x1) < 1e-15);
  CHECK(coeff_distance(a.x2, on(g, [](double x, double) { return -std::cos(x); })) < 1e-15);
  const VectorField b = perp_grad(on(g, [](double, double y) { return std::sin(y); }));
  CHECK(coeff_distance(b.x1, on(g, [](double, double y) { return std::cos(y); })) < 1e-15);
  CHECK(max_abs_coeff(b.x2) < 1e-15);
}

TEST_CASE("perp_grad is divergence free for random fields") {
  const GridPtr g = Grid::make(32, 32);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    worst = std::max(worst, max_abs_coeff(divergence(perp_grad(random_smooth_field(g, seed, 1.0)))));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("perp_div examples") {
  const GridPtr g = Grid::make(16, 16);
  ScalarField zero(g);
  const VectorField v1(on(g, [](double, double y) { return std::sin(y); }), zero);
  CHECK(coeff_distance(perp_div(v1), on(g, [](double, double y) { return std::cos(y); })) < 1e-15);

  // perp_div(perp_grad f) = d2^2 f + d1^2 f, the Laplacian.
  const ScalarField f = on(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  CHECK(coeff_distance(perp_div(perp_grad(f)), -2.0 * f) < 1e-14);

  const VectorField v3(zero, on(g, [](double x, double) { return std::sin(x); }));
  CHECK(coeff_distance(perp_div(v3), on(g, [](double x, double) { return -std::cos(x); })) < 1e-15);
}

TEST_CASE("product of cosines is the product-to-sum identity") {
  const GridPtr g = Grid::make(16, 16);
  const ScalarField c = on(g, [](double x, double) { return std::cos(x); });
  const ScalarField expected = on(g, [](double x, double) { return 0.5 + 0.5 * std::cos(2 * x); });
  CHECK(coeff_distance(product(c, c), expected) < 1e-15);
}

TEST_CASE("product with one leaves a masked field unchanged") {
  const GridPtr g = Grid::make(32, 32);
  const ScalarField f = random_smooth_field(g, 11, 1.0);
  ScalarField one(g);
  one.set_mode(0, 0, 1.0);
  CHECK(coeff_distance(product(f, one), f) < 1e-15);
}

TEST_CASE("two-thirds mask removes the aliased harmonic") {
  // On n = 24, cos(7x)^2 has its 14th harmonic aliased to k = -10, outside
  // the mask, so only the mean survives.
  const GridPtr g = Grid::make(24, 24);
  const ScalarField c = on(g, [](double x, double) { return std::cos(7 * x); });
  const ScalarField p = product(c, c);
  ScalarField half(g);
  half.set_mode(0, 0, 0.5);
  CHECK(coeff_distance(p, half) < 1e-15);
}

TEST_CASE("products are zero outside the mask") {
  const GridPtr g = Grid::make(32, 32);
  const ScalarField p = product(random_smooth_field(g, 1, 1.0, 0.1), random_smooth_field(g, 2, 1.0, 0.1));
  for (int k1 = -16; k1 < 16; ++k1) {
    for (int k2 = 0; k2 <= 16; ++k2) {
      if (!g->retained(k1, k2)) CHECK(p.mode(k1, k2) == Complex(0.0));
    }
  }
}

TEST_CASE("sobolev norm of cos x1") {
  const GridPtr g = Grid::make(16, 16);
  const ScalarField c = on(g, [](double x, double) { return std::cos(x); });
  CHECK(std::abs(sobolev_norm(c, 0.0) - 4.442882938158366) < 1e-12);
  CHECK(std::abs(sobolev_norm(c, 1.0) - 2 * kPi) < 1e-12);
  CHECK(sobolev_norm(ScalarField(g), 3.0) == 0.0);
}

TEST_CASE("sobolev norm is monotone in s and accepts negative indices") {
  const GridPtr g = Grid::make(32, 32);
  const ScalarField f = random_smooth_field(g, 5, 1.0);
  double prev = 0.0;
  for (double s : {-1.0, -0.5, 0.0, 0.5, 1.0, 2.5, 4.0}) {
    const double n = sobolev_norm(f, s);
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("anisotropic norm examples") {
  const GridPtr g = Grid::make(16, 16);
  const double l2 = std::sqrt(2 * kPi * kPi);
  const ScalarField cx = on(g, [](double x, double) { return std::cos(x); });
  const ScalarField cy = on(g, [](double, double y) { return std::cos(y); });
  CHECK(aniso_norm(cx, 1, 0.0) == 0.0);
  CHECK(aniso_norm(cx, 1, 3.0) == 0.0);
  CHECK(std::abs(aniso_norm(cy, 1, 0.0) - l2) < 1e-12);
  CHECK(std::abs(aniso_norm(cy, 2, 0.0) - l2) < 1e-12);
}

TEST_CASE("parseval against collocation quadrature") {
  const GridPtr g = Grid::make(32, 32);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ScalarField f = random_smooth_field(g, seed, 1.0);
    RealArray sq = to_physical(f);
    for (double& v : sq) v *= v;
    const double quad = grid_integral(*g, sq);
    const double spec = sobolev_norm_sq(f, 0.0);
    CHECK(std::abs(quad - spec) <= 1e-10 * spec);
  }
}

TEST_CASE("forward(inverse) round trip") {
  const GridPtr g = Grid::make(32, 48);
  const ScalarField f = random_smooth_field(g, 9, 1.0, 0.2);
  const ScalarField back = from_physical(g, to_physical(f));
  CHECK(coeff_distance(back, f) <= 1e-12 * max_abs_coeff(f));
}

TEST_CASE("random_smooth_field contract") {
  const GridPtr g = Grid::make(32, 32);
  CHECK(max_abs_coeff(random_smooth_field(g, 1, 0.0)) == 0.0);
  CHECK_THROWS_AS(random_smooth_field(g, 1, -1.0), Error);

  const ScalarField a = random_smooth_field(g, 42, 2.0, 0.3);
  const ScalarField b = random_smooth_field(g, 42, 2.0, 0.3);
  CHECK(testing::bit_identical(a, b));
  CHECK(mean(a) == 0.0);
  CHECK(std::abs(grid_integral(*g, to_physical(a))) < 1e-13);

  for (int k1 = -15; k1 <= 15; ++k1) {
    for (int k2 = -15; k2 <= 15; ++k2) {
      const double bound = 2.0 * std::exp(-0.3 * std::hypot(k1, k2));
      CHECK(std::abs(a.mode(k1, k2)) <= bound * (1 + 1e-15));
      CHECK(a.mode(-k1, -k2) == std::conj(a.mode(k1, k2)));
    }
  }
  const ScalarField with_mean = random_smooth_field(g, 42, 2.0, 0.3, false);
  CHECK(with_mean.mode(0, 0) != Complex(0.0));
}

TEST_CASE("interpolation and Poincare inequalities hold with constant one") {
  const GridPtr g = Grid::make(32, 32);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const ScalarField f = random_smooth_field(g, seed, 1.0);
    const double grad = std::sqrt(gradient_norm_sq(f, 0.0));
    CHECK(sobolev_norm(f, 0.0) <= grad * (1 + 1e-12));
    const double s = 4.0;
    CHECK(aniso_norm_sq(f, 1, s - 1) <= sobolev_norm(f, s) * aniso_norm(f, 2, s - 2) * (1 + 1e-10));
  }
}
