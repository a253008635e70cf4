#include "mhd2d/lemma_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mhd2d/error.hpp"
#include "mhd2d/spectral.hpp"

namespace mhd2d {

namespace {

// splitmix64 finalizer; decorrelates the per-field streams of one trial.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) { return mix(seed * 8 + stream); }

int pick_alpha1(std::uint64_t seed, int s0) {
  std::mt19937_64 rng(sub_seed(seed, 0));
  return std::uniform_int_distribution<int>(0, s0)(rng);
}

GridPtr lab_grid(const LabConfig& config) { return Grid::make(2 * config.n, 2 * config.n); }

ScalarField lab_field(const GridPtr& g, std::uint64_t seed, std::uint64_t stream, const LabConfig& c) {
  return random_smooth_field(g, sub_seed(seed, stream), 1.0, c.decay_rate, false, c.band);
}

double grad_norm(const ScalarField& f, double m) { return std::sqrt(gradient_norm_sq(f, m)); }

double vec_norm(const VectorField& v, double m) { return std::sqrt(sobolev_norm_sq(v, m)); }

VectorField vec_derivative(const VectorField& v, Axis axis) {
  return VectorField(derivative(v.x1, axis), derivative(v.x2, axis));
}

struct Mode {
  int k1, k2;
  Complex value;
};

/// Nonzero coefficients over the full wavenumber plane.
std::vector<Mode> support(const ScalarField& f) {
  const Grid& g = f.grid();
  std::vector<Mode> out;
  for (int k1 = -g.n1() / 2; k1 < g.n1() / 2; ++k1) {
    for (int k2 = -g.n2() / 2; k2 < g.n2() / 2; ++k2) {
      const Complex v = f.mode(k1, k2);
      if (v != Complex(0.0)) out.push_back({k1, k2, v});
    }
  }
  return out;
}

/// fg by direct convolution of the coefficient supports, so the product
/// carries no transform round-off. Throws if it leaves the lattice.
ScalarField exact_product(const ScalarField& f, const ScalarField& g) {
  const Grid& grid = f.grid();
  const std::vector<Mode> a = support(f);
  const std::vector<Mode> b = support(g);
  const int h1 = grid.n1() / 2, h2 = grid.n2() / 2;
  std::vector<Complex> acc(static_cast<std::size_t>(2 * h1) * (2 * h2));
  for (const Mode& p : a) {
    for (const Mode& q : b) {
      const int k1 = p.k1 + q.k1, k2 = p.k2 + q.k2;
      if (k1 < -h1 + 1 || k1 >= h1 || k2 < -h2 + 1 || k2 >= h2) {
        throw ResolutionError("lemma lab: product support exceeds the lattice");
      }
      acc[static_cast<std::size_t>(k1 + h1) * (2 * h2) + (k2 + h2)] += p.value * q.value;
    }
  }
  ScalarField out(f.grid_ptr());
  for (int k1 = -h1 + 1; k1 < h1; ++k1) {
    for (int k2 = 0; k2 < h2; ++k2) {
      if (k2 == 0 && k1 < 0) continue;
      const Complex v = acc[static_cast<std::size_t>(k1 + h1) * (2 * h2) + (k2 + h2)];
      if (v != Complex(0.0)) out.set_mode(k1, k2, v);
    }
  }
  return out;
}

LemmaTrial finish(LemmaTrial t) {
  t.ratio = t.rhs > 0.0 ? t.lhs / t.rhs : 0.0;
  return t;
}

}  // namespace

void LabConfig::require_resolves(int s0) const {
  if (s0 < 1) throw Error("s0 must be >= 1");
  if (band < 1) throw Error("band must be >= 1");
  if (n < 3 * (s0 + band)) {
    throw ResolutionError("lemma lab needs n >= 3 (s0 + band) = " + std::to_string(3 * (s0 + band)) +
                          ", got n = " + std::to_string(n));
  }
}

LemmaTrial commutator_measure(const ScalarField& f, const ScalarField& g, int alpha1, int alpha2) {
  const int s0 = alpha1 + alpha2;
  LemmaTrial t;
  t.lemma = "commutator";
  t.s0 = s0;
  t.alpha1 = alpha1;
  const ScalarField comm =
      mixed_derivative(exact_product(f, g), alpha1, alpha2) - exact_product(f, mixed_derivative(g, alpha1, alpha2));
  t.lhs = sobolev_norm(comm, 0.0);
  const int half = s0 / 2;
  t.rhs = grad_norm(f, half + 1) * sobolev_norm(g, s0 - 1) + grad_norm(f, s0 - 1) * sobolev_norm(g, half + 2);
  return finish(t);
}

LemmaTrial triple_product_measure(const VectorField& f, const VectorField& g, int alpha1, int alpha2) {
  const int s0 = alpha1 + alpha2;
  LemmaTrial t;
  t.lemma = "triple_product";
  t.s0 = s0;
  t.alpha1 = alpha1;
  double integral = 0.0;
  for (const ScalarField* gi : {&g.x1, &g.x2}) {
    const ScalarField transport =
        exact_product(f.x1, derivative(*gi, Axis::x1)) + exact_product(f.x2, derivative(*gi, Axis::x2));
    integral += inner_product(mixed_derivative(transport, alpha1, alpha2), mixed_derivative(*gi, alpha1, alpha2));
  }
  t.lhs = std::abs(integral);

  const int half = s0 / 2;
  const VectorField d1g = vec_derivative(g, Axis::x1);
  const VectorField d2g = vec_derivative(g, Axis::x2);
  const double g_hom = std::sqrt(homogeneous_norm_sq(g.x1, s0) + homogeneous_norm_sq(g.x2, s0));
  const double line1 = grad_norm(f.x1, half + 1) * vec_norm(d1g, s0 - 1) + grad_norm(f.x2, half + 1) * vec_norm(d2g, s0 - 1);
  const double line2 = grad_norm(f.x1, s0 - 1) * vec_norm(d1g, half + 2) + grad_norm(f.x2, s0 - 1) * vec_norm(d2g, half + 2);
  const double line3 = sobolev_norm(divergence(f), 2.0) * g_hom * g_hom;
  t.rhs = (line1 + line2) * g_hom + line3;
  return finish(t);
}

LemmaTrial commutator_trial(std::uint64_t seed, int s0, const LabConfig& config) {
  config.require_resolves(s0);
  const GridPtr grid = lab_grid(config);
  const int a1 = pick_alpha1(seed, s0);
  LemmaTrial t = commutator_measure(lab_field(grid, seed, 1, config), lab_field(grid, seed, 2, config), a1, s0 - a1);
  t.seed = seed;
  return t;
}

LemmaTrial triple_product_trial(std::uint64_t seed, int s0, const LabConfig& config) {
  config.require_resolves(s0);
  const GridPtr grid = lab_grid(config);
  const int a1 = pick_alpha1(seed, s0);
  const VectorField f(lab_field(grid, seed, 1, config), lab_field(grid, seed, 2, config));
  const VectorField g(lab_field(grid, seed, 3, config), lab_field(grid, seed, 4, config));
  LemmaTrial t = triple_product_measure(f, g, a1, s0 - a1);
  t.seed = seed;
  return t;
}

LemmaTrial constant_commutator_trial(std::uint64_t seed, int s0, const LabConfig& config) {
  config.require_resolves(s0);
  const GridPtr grid = lab_grid(config);
  const int a1 = pick_alpha1(seed, s0);
  std::mt19937_64 rng(sub_seed(seed, 5));
  ScalarField f(grid);
  f.set_mode(0, 0, std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
  LemmaTrial t = commutator_measure(f, lab_field(grid, seed, 2, config), a1, s0 - a1);
  t.lemma = "commutator_constant";
  t.seed = seed;
  return t;
}

std::vector<LemmaTrial> lemma_ensemble(const std::string& lemma, int s0, int trials,
                                       std::uint64_t master_seed, const LabConfig& config) {
  std::function<LemmaTrial(std::uint64_t)> run;
  if (lemma == "commutator") {
    run = [&](std::uint64_t seed) { return commutator_trial(seed, s0, config); };
  } else if (lemma == "triple_product") {
    run = [&](std::uint64_t seed) { return triple_product_trial(seed, s0, config); };
  } else {
    throw Error("unknown lemma '" + lemma + "'");
  }
  std::vector<LemmaTrial> out;
  out.reserve(trials);
  for (int i = 0; i < trials; ++i) out.push_back(run(mix(master_seed) + static_cast<std::uint64_t>(i)));
  return out;
}

double max_ratio(const std::vector<LemmaTrial>& trials) {
  double m = 0.0;
  for (const auto& t : trials) m = std::max(m, t.ratio);
  return m;
}

std::string lemma_csv_header() { return "lemma,seed,s0,lhs,rhs,ratio"; }

std::string lemma_csv_row(const LemmaTrial& t) {
  std::ostringstream os;
  os.precision(17);
  os << t.lemma << ',' << t.seed << ',' << t.s0 << ',' << t.lhs << ',' << t.rhs << ',' << t.ratio;
  return os.str();
}

std::uint64_t trial_set_hash(const std::vector<LemmaTrial>& trials) {
  std::string all;
  for (const auto& t : trials) all += lemma_csv_row(t) + '\n';
  return std::hash<std::string>{}(all);
}

double q_by_quadrature(const PressureLaw& law, double rho) {
  using boost::math::quadrature::gauss_kronrod;
  if (rho == 0.0) return 0.0;
  auto integrand = [&](double r) { return law.derivative(1.0 + r) - 1.0; };
  return gauss_kronrod<double, 15>::integrate(integrand, 0.0, rho, 15, 1e-14);
}

double q1_by_quadrature(const PressureLaw& law, double rho) {
  using boost::math::quadrature::gauss_kronrod;
  if (rho == 0.0) return 0.0;
  auto integrand = [&](double r) { return law.derivative(1.0 + r) / (1.0 + r) - 1.0; };
  return gauss_kronrod<double, 15>::integrate(integrand, 0.0, rho, 15, 1e-14);
}

RemainderBounds pressure_remainder_trial(const PressureLaw& law, const std::vector<double>& rho_samples) {
  RemainderBounds out;
  const double p2 = law.second_derivative(1.0);
  for (double rho : rho_samples) {
    if (std::abs(rho) > 0.5) throw Error("pressure_remainder_trial: samples must satisfy |rho| <= 1/2");
    double rq, rq1;
    if (rho == 0.0) {
      rq = 0.5 * std::abs(p2);
      rq1 = 0.5 * std::abs(p2 - 1.0);
    } else {
      rq = std::abs(q_by_quadrature(law, rho)) / (rho * rho);
      rq1 = std::abs(q1_by_quadrature(law, rho)) / (rho * rho);
    }
    out.q_ratio = std::max(out.q_ratio, rq);
    out.q1_ratio = std::max(out.q1_ratio, rq1);
  }
  return out;
}

}  // namespace mhd2d
