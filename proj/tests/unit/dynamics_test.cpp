#include <doctest.h>

#include <cmath>

#include "mhd2d/dynamics.hpp"
#include "mhd2d/error.hpp"
#include "mhd2d/initial_data.hpp"
#include "support.hpp"

using namespace mhd2d;
using testing::coeff_distance;
using testing::kPi;

namespace {

GridPtr grid32() { return Grid::make(32, 32); }

State small_state(const GridPtr& g, std::uint64_t seed, double eps = 1e-2) {
  InitConfig init;
  init.seed = seed;
  init.epsilon = eps;
  return make_initial_data(g, init, 4.0);
}

double tendency_max(const Tendency& t) {
  return std::max({max_abs_coeff(t.rho), max_abs_coeff(t.u.x1), max_abs_coeff(t.u.x2), max_abs_coeff(t.b.x1),
                   max_abs_coeff(t.b.x2)});
}

}  // namespace

TEST_CASE("pressure law") {
  const PressureLaw law(1.4);
  CHECK(law.pressure(1.0) == 0.0);
  CHECK(law.derivative(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(law.second_derivative(1.0) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(law.q(0.0) == 0.0);
  CHECK(law.q(0.5) == doctest::Approx((std::pow(1.5, 1.4) - 1) / 1.4 - 0.5).epsilon(1e-14));

  const PressureLaw lin = PressureLaw::linear();
  CHECK(lin.is_linear());
  for (double r : {-0.4, -0.1, 0.2, 0.5}) CHECK(lin.q(r) == doctest::Approx(0.0).epsilon(1e-16));
  CHECK(lin.q1(0.3) == doctest::Approx(std::log(1.3) - 0.3).epsilon(1e-14));
}

TEST_CASE("equilibrium is a fixed point") {
  const State zero(grid32());
  CHECK(tendency_max(rhs(zero, PhysParams{})) == 0.0);
  CHECK(max_abs_coeff(omega(zero, PhysParams{})) == 0.0);
  CHECK(max_abs_coeff(omega_rhs(zero, PhysParams{})) == 0.0);
  const L2Ledger l = l2_ledger(zero, PhysParams{});
  CHECK(l.energy == 0.0);
  CHECK(l.dissipation == 0.0);
  CHECK(l.i2 == 0.0);
  CHECK(l.i3 == 0.0);
}

TEST_CASE("tendency of a horizontal shear velocity") {
  const GridPtr g = grid32();
  State s(g);
  s.u.x1 = sample(g, [](double, double y) { return std::sin(y); });
  const Tendency t = rhs(s, PhysParams{});
  CHECK(max_abs_coeff(t.rho) < 1e-15);
  CHECK(coeff_distance(t.b.x1, sample(g, [](double, double y) { return std::cos(y); })) < 1e-15);
  CHECK(max_abs_coeff(t.b.x2) < 1e-15);
  CHECK(coeff_distance(t.u.x1, -1.0 * s.u.x1) < 1e-13);
  CHECK(max_abs_coeff(t.u.x2) < 1e-15);

  PhysParams thick;
  thick.mu = 2.5;
  CHECK(coeff_distance(rhs(s, thick).u.x1, -2.5 * s.u.x1) < 1e-13);
}

TEST_CASE("tendency of a horizontal magnetic shear") {
  const GridPtr g = grid32();
  State s(g);
  s.b.x1 = sample(g, [](double, double y) { return std::cos(y); });
  const Tendency t = rhs(s, PhysParams{});
  CHECK(max_abs_coeff(t.rho) < 1e-15);
  CHECK(max_abs_coeff(t.b.x1) < 1e-15);
  CHECK(max_abs_coeff(t.b.x2) < 1e-15);
  CHECK(coeff_distance(t.u.x1, sample(g, [](double, double y) { return -std::sin(y); })) < 1e-15);
  CHECK(coeff_distance(t.u.x2, sample(g, [](double, double y) { return 0.5 * std::sin(2 * y); })) < 1e-15);
}

TEST_CASE("split and primitive assemblies agree") {
  const GridPtr g = Grid::make(48, 48);
  for (std::uint64_t seed : {1, 2, 3}) {
    const State s = small_state(g, seed, 0.05);
    const Tendency a = rhs(s, PhysParams{});
    const Tendency b = rhs_primitive(s, PhysParams{});
    const double scale = tendency_max(a);
    CHECK(coeff_distance(a.u, b.u) <= 1e-10 * scale);
    CHECK(coeff_distance(a.rho, b.rho) <= 1e-12 * scale);
    CHECK(coeff_distance(a.b, b.b) <= 1e-12 * scale);
  }
}

TEST_CASE("linear part only when nonlinear terms are off") {
  const GridPtr g = grid32();
  const State s = small_state(g, 4, 0.1);
  RhsOptions linear;
  linear.nonlinear = false;
  const Tendency t = rhs(s, PhysParams{}, linear);
  CHECK(coeff_distance(t.rho, -1.0 * divergence(s.u)) < 1e-15);
  CHECK(coeff_distance(t.b, perp_grad(s.u.x1)) < 1e-15);
  const ScalarField u1 = laplacian(s.u.x1) + perp_div(s.b) - derivative(s.rho, Axis::x1);
  CHECK(coeff_distance(t.u.x1, u1) < 1e-14);
}

TEST_CASE("the mean of b never moves") {
  const GridPtr g = grid32();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Tendency t = rhs(small_state(g, seed, 0.1), PhysParams{});
    CHECK(t.b.x1.mode(0, 0) == Complex(0.0));
    CHECK(t.b.x2.mode(0, 0) == Complex(0.0));
  }
}

TEST_CASE("reflection commutes with the right-hand side") {
  const GridPtr g = grid32();
  const State s = small_state(g, 8, 0.05);
  const Tendency direct = rhs(reflect_x1(s), PhysParams{});
  const Tendency t = rhs(s, PhysParams{});
  State as_state(g);
  as_state.rho = t.rho;
  as_state.u = t.u;
  as_state.b = t.b;
  const State mirrored = reflect_x1(as_state);
  CHECK(coeff_distance(direct.u, mirrored.u) < 1e-15);
  CHECK(coeff_distance(direct.b, mirrored.b) < 1e-15);
  CHECK(coeff_distance(direct.rho, mirrored.rho) < 1e-15);
}

TEST_CASE("large density is rejected") {
  const GridPtr g = grid32();
  State s(g);
  s.rho = sample(g, [](double x, double) { return 0.8 * std::cos(x); });
  CHECK_THROWS_AS(check_smallness(s), SmallnessViolation);
  CHECK_THROWS_AS(rhs(s, PhysParams{}), SmallnessViolation);
}

TEST_CASE("omega examples") {
  const GridPtr g = Grid::make(64, 64);
  State s(g);
  s.b.x1 = sample(g, [](double, double y) { return std::cos(y); });
  CHECK(coeff_distance(omega(s, PhysParams{}), sample(g, [](double, double y) { return -std::sin(y); })) < 1e-14);

  const double eps = 0.1;
  const PressureLaw law(1.4);
  State r(g);
  r.rho = sample(g, [&](double x, double) { return eps * std::cos(x); });
  const ScalarField expected =
      sample(g, [&](double x, double) { return law.derivative(1 + eps * std::cos(x)) * eps * std::sin(x); });
  CHECK(coeff_distance(omega(r, PhysParams{}), expected) < 1e-13);
}

TEST_CASE("omega_rhs of a diagonal shear") {
  const GridPtr g = grid32();
  State s(g);
  s.u.x1 = sample(g, [](double x, double y) { return std::sin(x + y); });
  CHECK(coeff_distance(omega_rhs(s, PhysParams{}), -3.0 * s.u.x1) < 1e-14);

  PhysParams other;
  other.lambda = 0.5;
  CHECK_THROWS_AS(omega_rhs(s, other), Error);
}

TEST_CASE("u1 rewritten through omega") {
  const GridPtr g = Grid::make(64, 64);
  const State s = small_state(g, 6, 1e-2);
  const double scale = max_abs_coeff(rhs(s, PhysParams{}).u.x1);
  CHECK(max_abs_coeff(u1_omega_residual(s, PhysParams{})) <= 1e-10 * scale);
}

TEST_CASE("energy balance of a shear flow") {
  const GridPtr g = grid32();
  State s(g);
  s.u.x1 = sample(g, [](double, double y) { return std::sin(y); });
  const L2Ledger l = l2_ledger(s, PhysParams{});
  CHECK(l.energy == doctest::Approx(kPi * kPi).epsilon(1e-14));
  CHECK(l.dissipation == doctest::Approx(2 * kPi * kPi).epsilon(1e-14));
  CHECK(std::abs(l.i2) < 1e-14);
  CHECK(std::abs(l.i3) < 1e-14);
}

TEST_CASE("reconstruct_physical adds the equilibrium back") {
  const GridPtr g = Grid::make(16, 16);
  State s(g);
  s.b.x1 = sample(g, [](double, double y) { return std::cos(y); });
  const PhysicalFields p = reconstruct_physical(s);
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      const std::size_t at = static_cast<std::size_t>(i) * 16 + j;
      CHECK(p.rho_total[at] == doctest::Approx(1.0));
      CHECK(p.u1[at] == 0.0);
      CHECK(p.b1_total[at] == doctest::Approx(std::cos(g->x2(j))));
      CHECK(p.b2_total[at] == doctest::Approx(1.0));
    }
  }
  const State r = small_state(Grid::make(32, 32), 3, 0.1);
  const PhysicalFields q = reconstruct_physical(r);
  CHECK(std::abs(grid_integral(r.grid(), q.b2_total) / (4 * kPi * kPi) - 1.0) < 1e-15);
}

TEST_CASE("projection removes divergence and mean") {
  const GridPtr g = grid32();
  VectorField b(random_smooth_field(g, 1, 1.0, 0.5, false), random_smooth_field(g, 2, 1.0, 0.5, false));
  project_divergence_free(b);
  CHECK(max_abs_coeff(divergence(b)) < 1e-15);
  CHECK(mean(b.x1) == 0.0);
  CHECK(mean(b.x2) == 0.0);
  CHECK(divergence_norm(b) < 1e-14);
}
