#include "mhd2d/integrator.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

#include "mhd2d/dynamics.hpp"
#include "mhd2d/error.hpp"

namespace mhd2d {

namespace {

struct Tableau {
  int stages;
  std::array<double, 4> c;
  std::array<std::array<double, 4>, 4> a;
  std::array<double, 4> b;
};

const Tableau& tableau(Scheme scheme) {
  static const Tableau rk3{3,
                           {0.0, 0.5, 1.0, 0.0},
                           {{{0, 0, 0, 0}, {0.5, 0, 0, 0}, {-1.0, 2.0, 0, 0}, {0, 0, 0, 0}}},
                           {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0, 0.0}};
  static const Tableau rk4{4,
                           {0.0, 0.5, 0.5, 1.0},
                           {{{0, 0, 0, 0}, {0.5, 0, 0, 0}, {0, 0.5, 0, 0}, {0, 0, 1.0, 0}}},
                           {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0}};
  return scheme == Scheme::IFRK3 ? rk3 : rk4;
}

void add_scaled(State& y, double factor, const Tendency& k) {
  y.rho.axpy(factor, k.rho);
  y.u.axpy(factor, k.u);
  y.b.axpy(factor, k.b);
}

void apply_filter(State& s, double strength, double dt) {
  const Grid& g = s.grid();
  const double c1 = g.n1() / 3.0;
  const double c2 = g.n2() / 3.0;
  ScalarField* fields[] = {&s.rho, &s.b.x1, &s.b.x2};
  for (int i = 0; i < g.n1(); ++i) {
    const double r1 = std::abs(g.k1(i)) / c1;
    for (int j = 0; j < g.nh(); ++j) {
      const double r = std::max(r1, j / c2);
      if (r <= 0.8) continue;
      const double x = (r - 0.8) / 0.2;
      const double factor = std::exp(-strength * dt * x * x * x * x);
      for (ScalarField* f : fields) f->coeffs()[g.index(i, j)] *= factor;
    }
  }
}

}  // namespace

int scheme_order(Scheme scheme) { return scheme == Scheme::IFRK3 ? 3 : 4; }

const char* scheme_name(Scheme scheme) { return scheme == Scheme::IFRK3 ? "IFRK3" : "IFRK4"; }

Scheme parse_scheme(const std::string& name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  if (upper == "IFRK3") return Scheme::IFRK3;
  if (upper == "IFRK4") return Scheme::IFRK4;
  throw Error("unknown scheme '" + name + "' (expected IFRK3 or IFRK4)");
}

void StepConfig::validate() const {
  if (!(dt > 0.0)) throw Error("dt must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw Error("cfl_safety must lie in (0, 1]");
  if (!(filter_strength >= 0.0)) throw Error("filter_strength must be nonnegative");
}

Eigen::Matrix2d viscous_semigroup(int k1, int k2, double tau, double mu, double lambda) {
  const double kk = double(k1) * k1 + double(k2) * k2;
  if (kk == 0.0) return Eigen::Matrix2d::Identity();
  const double perp = std::exp(-mu * kk * tau);
  const double par = std::exp(-(mu + lambda) * kk * tau);
  Eigen::Matrix2d proj;
  proj << k1 * k1 / kk, k1 * k2 / kk, k1 * k2 / kk, k2 * k2 / kk;
  return perp * (Eigen::Matrix2d::Identity() - proj) + par * proj;
}

namespace {

/// Per-mode decay factors, computed once per distinct tau within a step.
class SemigroupCache {
 public:
  SemigroupCache(const Grid& grid, const PhysParams& params) : grid_(grid), params_(params) {}

  void apply(VectorField& u, double tau) {
    if (tau == 0.0) return;
    const Table& t = table(tau);
    const Grid& g = grid_;
    auto a = u.x1.coeffs();
    auto c = u.x2.coeffs();
    const bool scalar = params_.lambda == 0.0;
    for (int i = 0; i < g.n1(); ++i) {
      const double k1 = g.k1(i);
      for (int j = 0; j < g.nh(); ++j) {
        const std::size_t idx = g.index(i, j);
        const double perp = t.perp[idx];
        if (scalar) {
          a[idx] *= perp;
          c[idx] *= perp;
          continue;
        }
        const double k2 = j;
        const double kk = k1 * k1 + k2 * k2;
        if (kk == 0.0) continue;
        const Complex along = (k1 * a[idx] + k2 * c[idx]) / kk;
        const double par = t.par[idx];
        a[idx] = perp * (a[idx] - k1 * along) + par * k1 * along;
        c[idx] = perp * (c[idx] - k2 * along) + par * k2 * along;
      }
    }
  }

 private:
  struct Table {
    double tau;
    std::vector<double> perp;
    std::vector<double> par;
  };

  const Table& table(double tau) {
    for (const Table& t : tables_) {
      if (t.tau == tau) return t;
    }
    const Grid& g = grid_;
    Table t{tau, std::vector<double>(g.spectral_size()), std::vector<double>(g.spectral_size())};
    for (int i = 0; i < g.n1(); ++i) {
      const double k1 = g.k1(i);
      for (int j = 0; j < g.nh(); ++j) {
        const double kk = k1 * k1 + double(j) * j;
        const std::size_t idx = g.index(i, j);
        t.perp[idx] = std::exp(-params_.mu * kk * tau);
        t.par[idx] = std::exp(-(params_.mu + params_.lambda) * kk * tau);
      }
    }
    tables_.push_back(std::move(t));
    return tables_.back();
  }

  const Grid& grid_;
  const PhysParams& params_;
  std::vector<Table> tables_;
};

}  // namespace

void apply_viscous_semigroup(VectorField& u, double tau, const PhysParams& params) {
  SemigroupCache(u.grid(), params).apply(u, tau);
}

double cfl_limit(const State& state, double cfl_safety) {
  const Grid& g = state.grid();
  const double h = 2.0 * std::numbers::pi / std::max(g.n1(), g.n2());
  const RealArray u1 = to_physical(state.u.x1);
  const RealArray u2 = to_physical(state.u.x2);
  const RealArray b1 = to_physical(state.b.x1);
  const RealArray b2 = to_physical(state.b.x2);
  double umax = 0.0, bmax = 0.0;
  for (std::size_t p = 0; p < u1.size(); ++p) {
    umax = std::max(umax, u1[p] * u1[p] + u2[p] * u2[p]);
    bmax = std::max(bmax, b1[p] * b1[p] + b2[p] * b2[p]);
  }
  umax = std::sqrt(umax);
  bmax = std::sqrt(bmax);
  return cfl_safety * h / (1.0 + umax + bmax);
}

State step(const State& state, const PhysParams& params, const StepConfig& config, double dt) {
  if (!(dt > 0.0)) throw Error("step size must be positive");
  const double limit = cfl_limit(state, config.cfl_safety);
  if (dt > limit * (1.0 + 1e-12)) {
    throw CflViolation("dt = " + std::to_string(dt) + " exceeds the CFL limit " +
                       std::to_string(limit));
  }
  const Tableau& tb = tableau(config.scheme);
  const RhsOptions explicit_part{.viscous = false, .nonlinear = true};
  SemigroupCache semigroup(state.grid(), params);

  std::vector<Tendency> k;
  k.reserve(tb.stages);
  for (int i = 0; i < tb.stages; ++i) {
    State y = state;
    semigroup.apply(y.u, tb.c[i] * dt);
    for (int j = 0; j < i; ++j) {
      if (tb.a[i][j] == 0.0) continue;
      Tendency kj = k[j];
      semigroup.apply(kj.u, (tb.c[i] - tb.c[j]) * dt);
      add_scaled(y, dt * tb.a[i][j], kj);
    }
    y.time = state.time + tb.c[i] * dt;
    k.push_back(rhs(y, params, explicit_part));
  }

  State out = state;
  semigroup.apply(out.u, dt);
  for (int i = 0; i < tb.stages; ++i) {
    Tendency ki = k[i];
    semigroup.apply(ki.u, (1.0 - tb.c[i]) * dt);
    add_scaled(out, dt * tb.b[i], ki);
  }

  if (config.filter_enabled) apply_filter(out, config.filter_strength, dt);
  if (config.project_divergence && divergence_norm(out.b) > config.divergence_tolerance) {
    project_divergence_free(out.b);
  }
  out.b.x1.coeffs()[0] = Complex{};
  out.b.x2.coeffs()[0] = Complex{};
  out.time = state.time + dt;
  return out;
}

State advance(State state, const PhysParams& params, const StepConfig& config, double t_end,
              const Observer& observer, const AdvanceOptions& options) {
  config.validate();
  if (t_end < state.time) throw Error("advance: t_end is before the current time");

  const double eps = 1e-12 * std::max(1.0, std::abs(t_end));
  const bool sampled = options.sample_interval > 0.0;
  // Sample times are absolute multiples of the interval, so a run resumed at
  // a sample time steps exactly like the uninterrupted run.
  long long sample_index = 0;
  if (sampled) {
    sample_index = static_cast<long long>(std::floor(state.time / options.sample_interval)) + 1;
    while (sample_index * options.sample_interval - state.time <= eps) ++sample_index;
  }
  auto next_sample = [&] {
    return sampled ? std::min(t_end, sample_index * options.sample_interval) : t_end;
  };

  if (observer) observer(state);
  bool last_observed = true;
  while (t_end - state.time > eps) {
    double dt = config.dt;
    if (options.auto_cfl) dt = std::min(dt, cfl_limit(state, config.cfl_safety));
    const double target = next_sample();
    bool lands = false;
    if (state.time + dt >= target - eps) {
      dt = target - state.time;
      lands = true;
    }
    state = step(state, params, config, dt);
    if (lands) {
      state.time = target;
      if (sampled) ++sample_index;
    }
    last_observed = false;
    if (observer && (!sampled || lands)) {
      observer(state);
      last_observed = true;
    }
  }
  if (observer && !last_observed) observer(state);
  return state;
}

}  // namespace mhd2d
