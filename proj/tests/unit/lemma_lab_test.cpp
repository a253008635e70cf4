#include <doctest.h>

#include <cmath>

#include "mhd2d/error.hpp"
#include "mhd2d/lemma_lab.hpp"
#include "mhd2d/scenarios.hpp"
#include "mhd2d/spectral.hpp"
#include "support.hpp"

using namespace mhd2d;
using testing::kPi;

TEST_CASE("commutator of two cosines") {
  const GridPtr g = Grid::make(32, 32);
  ScalarField c(g);
  c.set_mode(1, 0, 0.5);
  const LemmaTrial t = commutator_measure(c, c, 1, 0);
  CHECK(t.lhs == doctest::Approx(std::sqrt(kPi * kPi / 2)).epsilon(1e-14));
  CHECK(t.rhs > 0.0);
}

TEST_CASE("commutator degenerate inputs") {
  const GridPtr g = Grid::make(32, 32);
  const ScalarField f = random_smooth_field(g, 1, 1.0, 0.5, true, 5);
  const LemmaTrial zero_g = commutator_measure(f, ScalarField(g), 1, 1);
  CHECK(zero_g.lhs == 0.0);
  CHECK(zero_g.ratio == 0.0);

  ScalarField constant(g);
  constant.set_mode(0, 0, 2.5);
  const ScalarField h = random_smooth_field(g, 2, 1.0, 0.5, true, 5);
  CHECK(commutator_measure(constant, h, 2, 1).lhs < 1e-13);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) CHECK(constant_commutator_trial(seed, 3).lhs < 1e-13);
}

TEST_CASE("commutator ratio is invariant under scaling f") {
  const GridPtr g = Grid::make(32, 32);
  const ScalarField f = random_smooth_field(g, 3, 1.0, 0.5, true, 5);
  const ScalarField h = random_smooth_field(g, 4, 1.0, 0.5, true, 5);
  const LemmaTrial a = commutator_measure(f, h, 1, 2);
  const LemmaTrial b = commutator_measure(-7.0 * f, h, 1, 2);
  CHECK(b.lhs == doctest::Approx(7 * a.lhs).epsilon(1e-12));
  CHECK(b.rhs == doctest::Approx(7 * a.rhs).epsilon(1e-12));
  CHECK(std::abs(b.ratio - a.ratio) <= 1e-12 * a.ratio);
}

TEST_CASE("products that leave the lattice are refused") {
  const GridPtr g = Grid::make(16, 16);
  const ScalarField wide = random_smooth_field(g, 5, 1.0);
  CHECK_THROWS_AS(commutator_measure(wide, wide, 1, 0), ResolutionError);
  LabConfig cfg;
  cfg.n = 16;
  CHECK_THROWS_AS(cfg.require_resolves(3), ResolutionError);
}

TEST_CASE("triple product degenerate inputs") {
  const GridPtr g = Grid::make(32, 32);
  const VectorField f(random_smooth_field(g, 1, 1.0, 0.5, true, 5), random_smooth_field(g, 2, 1.0, 0.5, true, 5));
  CHECK(triple_product_measure(f, VectorField(g), 1, 1).lhs == 0.0);

  // f = (sin x2, 0) transports along x1 and g depends only on x2, so f.grad g
  // vanishes. Every term of the bound pairs f1 with d1 g or f2 with d2 g, or
  // carries div f, so the bound vanishes as well.
  VectorField shear(g);
  shear.x1.set_mode(0, 1, Complex(0.0, -0.5));
  VectorField vertical(g);
  vertical.x1.set_mode(0, 2, 0.5);
  vertical.x2.set_mode(0, 3, Complex(0.0, -0.5));
  const LemmaTrial t = triple_product_measure(shear, vertical, 0, 2);
  CHECK(t.lhs < 1e-12);
  CHECK(t.rhs == 0.0);
  CHECK(t.ratio == 0.0);
}

TEST_CASE("trials are reproducible and ensembles nest") {
  const LemmaTrial a = triple_product_trial(11, 2);
  const LemmaTrial b = triple_product_trial(11, 2);
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
  CHECK(a.alpha1 >= 0);
  CHECK(a.alpha1 <= 2);

  const auto small = lemma_ensemble("commutator", 2, 10, 99);
  const auto large = lemma_ensemble("commutator", 2, 20, 99);
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(lemma_csv_row(small[i]) == lemma_csv_row(large[i]));
  CHECK(trial_set_hash(small) == trial_set_hash(lemma_ensemble("commutator", 2, 10, 99)));
  CHECK(trial_set_hash(small) != trial_set_hash(large));
  CHECK(max_ratio(large) >= max_ratio(small));
  CHECK_THROWS_AS(lemma_ensemble("nonsense", 1, 5, 1), Error);
}

TEST_CASE("pressure remainders") {
  const PressureLaw law(1.4);
  const RemainderBounds at_zero = pressure_remainder_trial(law, {0.0});
  CHECK(at_zero.q_ratio == doctest::Approx(0.2).epsilon(1e-14));

  const RemainderBounds lin = pressure_remainder_trial(PressureLaw::linear(), {-0.5, -0.1, 0.2, 0.5});
  CHECK(lin.q_ratio < 1e-15);

  const double closed = ((std::pow(1.5, 1.4) - 1) / 1.4 - 0.5) / 0.25;
  CHECK(q_by_quadrature(law, 0.5) / 0.25 == doctest::Approx(closed).epsilon(1e-13));
  CHECK(pressure_remainder_trial(law, {0.5}).q_ratio == doctest::Approx(closed).epsilon(1e-13));
  CHECK(q1_by_quadrature(law, -0.3) == doctest::Approx(law.q1(-0.3)).epsilon(1e-12));
  CHECK_THROWS_AS(pressure_remainder_trial(law, {0.6}), Error);
}

TEST_CASE("lemma suite is deterministic") {
  const LemmaSuiteReport a = lemma_suite(5, 20);
  const LemmaSuiteReport b = lemma_suite(5, 20);
  REQUIRE(a.trials.size() == b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) CHECK(lemma_csv_row(a.trials[i]) == lemma_csv_row(b.trials[i]));
  REQUIRE(a.ensembles.size() == 6);
  for (std::size_t i = 0; i < a.ensembles.size(); ++i) CHECK(a.ensembles[i].hash == b.ensembles[i].hash);
  CHECK(a.remainder.q_ratio == a.remainder_repeat.q_ratio);
}
