#include <doctest.h>

#include <cmath>
#include <random>

#include "mhd2d/diagnostics.hpp"
#include "mhd2d/error.hpp"
#include "mhd2d/initial_data.hpp"
#include "mhd2d/integrator.hpp"
#include "support.hpp"

using namespace mhd2d;
using testing::kPi;

TEST_CASE("time weights") {
  CHECK(time_weight(0, 0.25, 0.0) == 1.0);
  CHECK(time_weight(1, 0.25, 3.0) == doctest::Approx(2.8284271247461903).epsilon(1e-15));
  CHECK(time_weight(-1, 0.25, 15.0) == doctest::Approx(0.03125).epsilon(1e-15));
}

TEST_CASE("weight identities") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t_dist(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const double t = t_dist(rng);
    const double sigma = 0.25;
    const double w0 = time_weight(0, sigma, t);
    const double w2 = time_weight(2, sigma, t);
    CHECK(std::abs(w0 - std::sqrt(time_weight(-1, sigma, t) * time_weight(1, sigma, t))) < 1e-14 * std::max(1.0, w0));
    CHECK(std::abs(w2 - std::sqrt(time_weight(1, sigma, t) * time_weight(3, sigma, t))) < 1e-14 * std::max(1.0, w2));
  }
}

TEST_CASE("diagnostics config bounds") {
  DiagnosticsConfig c;
  c.sigma = 0.7;
  CHECK_THROWS_AS(c.validate(), Error);
  c.sigma = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = DiagnosticsConfig{};
  c.sample_interval = 0.0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("zero state gives an empty ledger") {
  EnergyLedger ledger(DiagnosticsConfig{});
  ledger.observe(State(Grid::make(16, 16)));
  CHECK(ledger.total_energy() == 0.0);
  for (const MonitorEntry& e : theorem_monitor(ledger, 0.0, 10.0)) {
    CHECK(e.ratio == 0.0);
    CHECK(e.pass);
  }
}

TEST_CASE("instantaneous L2 energy of a shear flow") {
  const GridPtr g = Grid::make(16, 16);
  State s(g);
  s.u.x1 = sample(g, [](double, double y) { return std::sin(y); });
  DiagnosticsConfig c;
  c.s = 0.0;
  const Snapshot snap = take_snapshot(s, PhysParams{}, c);
  CHECK(snap.x0 == doctest::Approx(2 * kPi * kPi).epsilon(1e-14));
  CHECK(snap.grad_u == doctest::Approx(2 * kPi * kPi).epsilon(1e-14));
}

TEST_CASE("trapezoid accumulation of a constant") {
  const double c = 3.7;
  EnergyLedger ledger(DiagnosticsConfig{});
  Snapshot a;
  a.t = 0.0;
  a.rho_vv[1] = c;
  Snapshot b = a;
  b.t = 1.0;
  ledger.observe(a);
  CHECK(ledger.current().p[1] == 0.0);
  ledger.observe(b);
  CHECK(ledger.current().p[1] == doctest::Approx(c * (1 + std::pow(2.0, 0.75)) / 2).epsilon(1e-15));
  CHECK_THROWS_AS(ledger.observe(b), Error);
}

TEST_CASE("total energy is additive") {
  Functionals f;
  CHECK(total_energy(f) == 0.0);
  f.frak_e = 0.3;
  CHECK(total_energy(f) == 0.3);
}

TEST_CASE("ledger on a trajectory") {
  const GridPtr g = Grid::make(32, 32);
  InitConfig init;
  init.epsilon = 1e-2;
  const State s = make_initial_data(g, init, 4.0);
  // One trajectory, sampled every 1, 2 and 4 steps.
  std::vector<EnergyLedger> ledgers(3, EnergyLedger(DiagnosticsConfig{}));
  StepConfig cfg;
  cfg.dt = 0.003125;
  AdvanceOptions opt;
  opt.sample_interval = cfg.dt;
  int count = 0;
  advance(s, PhysParams{}, cfg, 1.0, [&](const State& x) {
    for (int level = 0; level < 3; ++level) {
      if (count % (1 << level) == 0) ledgers[level].observe(x);
    }
    ++count;
  }, opt);

  const auto& h = ledgers[0].history();
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(total_energy(h[i]) >= total_energy(h[i - 1]));

  // Trapezoid accumulators converge at second order in the sample interval.
  const double fine = ledgers[0].current().p[1];
  const double mid = ledgers[1].current().p[1];
  const double coarse = ledgers[2].current().p[1];
  const double ratio = (coarse - mid) / (mid - fine);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);

  const auto monitor = theorem_monitor(ledgers[0], init.epsilon, 10.0);
  CHECK(!monitor.empty());
  for (const MonitorEntry& e : monitor) {
    CHECK(std::isfinite(e.ratio));
    CHECK(e.running_max >= e.ratio);
  }
  CHECK(ledgers[0].csv().find(ledgers[0].csv_header()) == 0);
}

TEST_CASE("decay fit") {
  std::vector<double> t, q, flat;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.5 * i);
    q.push_back(std::pow(1 + 0.5 * i, -0.75));
    flat.push_back(5.0);
  }
  const DecayFit f = decay_fit(t, q, 0.0, 50.0, "q");
  CHECK(std::abs(f.exponent + 0.75) < 1e-12);
  CHECK(f.samples == 101);
  CHECK_FALSE(f.degenerate);
  CHECK(std::abs(decay_fit(t, flat, 0.0, 50.0).exponent) < 1e-12);
  CHECK_THROWS_AS(decay_fit(t, q, 0.0, 4.0), Error);

  std::vector<double> with_zero = q;
  with_zero[50] = 0.0;
  CHECK(decay_fit(t, with_zero, 0.0, 50.0).degenerate);
}

TEST_CASE("exponential decay is flagged by a poor power-law fit") {
  std::vector<double> t, q;
  for (int i = 0; i <= 100; ++i) {
    t.push_back(0.1 * i);
    q.push_back(std::exp(-0.1 * i));
  }
  CHECK(decay_fit(t, q, 0.0, 10.0).r_squared < 0.99);
}
