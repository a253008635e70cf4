#include "mhd2d/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "mhd2d/error.hpp"

namespace mhd2d {

// ------------------------------------------------------------ state glue ---

void PhysParams::validate() const {
  if (!(mu > 0.0)) throw Error("viscosity mu must be positive");
  if (!(mu + lambda > 0.0)) throw Error("mu + lambda must be positive");
}

State& State::axpy(double factor, const State& other) {
  rho.axpy(factor, other.rho);
  u.axpy(factor, other.u);
  b.axpy(factor, other.b);
  return *this;
}

void check_smallness(const State& state) {
  const double m = max_abs_physical(state.rho);
  if (m > 0.5) {
    throw SmallnessViolation("|rho| reached " + std::to_string(m) + " > 1/2 at t = " +
                             std::to_string(state.time));
  }
}

double divergence_norm(const VectorField& b) { return sobolev_norm(divergence(b), 0.0); }

namespace {

ScalarField viscous_component(const VectorField& u, const PhysParams& params, int component) {
  // mu Lap u_c + lambda d_c div u
  ScalarField out = params.mu * laplacian(component == 1 ? u.x1 : u.x2);
  if (params.lambda != 0.0) {
    const ScalarField grad_div =
        component == 1 ? mixed_derivative(u.x1, 2, 0) + mixed_derivative(u.x2, 1, 1)
                       : mixed_derivative(u.x1, 1, 1) + mixed_derivative(u.x2, 0, 2);
    out.axpy(params.lambda, grad_div);
  }
  return out;
}

void zero_mean(VectorField& v) {
  v.x1.coeffs()[0] = Complex{};
  v.x2.coeffs()[0] = Complex{};
}

/// Physical-space samples of the fields the nonlinear terms need.
struct Samples {
  RealArray r, rx, ry;
  RealArray u1, u2, u1x, u1y, u2x, u2y;
  RealArray b1, b2, b1x, b1y, b2x, b2y;

  explicit Samples(const State& s)
      : r(to_physical(s.rho)),
        rx(to_physical(derivative(s.rho, Axis::x1))),
        ry(to_physical(derivative(s.rho, Axis::x2))),
        u1(to_physical(s.u.x1)),
        u2(to_physical(s.u.x2)),
        u1x(to_physical(derivative(s.u.x1, Axis::x1))),
        u1y(to_physical(derivative(s.u.x1, Axis::x2))),
        u2x(to_physical(derivative(s.u.x2, Axis::x1))),
        u2y(to_physical(derivative(s.u.x2, Axis::x2))),
        b1(to_physical(s.b.x1)),
        b2(to_physical(s.b.x2)),
        b1x(to_physical(derivative(s.b.x1, Axis::x1))),
        b1y(to_physical(derivative(s.b.x1, Axis::x2))),
        b2x(to_physical(derivative(s.b.x2, Axis::x1))),
        b2y(to_physical(derivative(s.b.x2, Axis::x2))) {}

  std::size_t size() const { return r.size(); }
};

void require_not_degenerate(const RealArray& rho) {
  const double lo = *std::min_element(rho.begin(), rho.end());
  if (1.0 + lo <= 0.25) {
    throw SmallnessViolation("1 + rho dropped to " + std::to_string(1.0 + lo) +
                             " (<= 1/4); quotient 1/(rho+1) is near-singular");
  }
}

}  // namespace

// ------------------------------------------------------------------ rhs ---

Tendency rhs(const State& state, const PhysParams& params, const RhsOptions& options) {
  params.validate();
  const GridPtr& gp = state.grid_ptr();
  Tendency out(gp);

  out.rho = -1.0 * divergence(state.u);
  out.u.x1 = perp_div(state.b) - derivative(state.rho, Axis::x1);
  out.u.x2 = -1.0 * derivative(state.rho, Axis::x2);
  out.b = perp_grad(state.u.x1);

  ScalarField visc1 = viscous_component(state.u, params, 1);
  ScalarField visc2 = viscous_component(state.u, params, 2);
  if (options.viscous) {
    out.u.x1 += visc1;
    out.u.x2 += visc2;
  }

  if (options.nonlinear) {
    const Samples s(state);
    require_not_degenerate(s.r);
    const RealArray v1 = to_physical(visc1);
    const RealArray v2 = to_physical(visc2);
    const PressureLaw& law = params.pressure;

    const std::size_t n = s.size();
    RealArray flux1(n), flux2(n), nu1(n), nu2(n), nb1(n), nb2(n);
    for (std::size_t p = 0; p < n; ++p) {
      const double rho = s.r[p];
      const double inv = 1.0 / (1.0 + rho);
      const double frac = rho * inv;
      const double div = s.u1x[p] + s.u2y[p];
      const double curl_b = s.b1y[p] - s.b2x[p];
      // -(1/(rho+1)) grad P = -grad rho + grad rho (1 - P'/(rho+1))
      const double pfac = 1.0 - law.derivative(1.0 + rho) * inv;
      const double bgb1 = s.b1[p] * s.b1x[p] + s.b2[p] * s.b1y[p];
      const double bgb2 = s.b1[p] * s.b2x[p] + s.b2[p] * s.b2y[p];
      const double hgb1 = s.b1[p] * s.b1x[p] + s.b2[p] * s.b2x[p];  // (1/2) d1 |b|^2
      const double hgb2 = s.b1[p] * s.b1y[p] + s.b2[p] * s.b2y[p];  // (1/2) d2 |b|^2

      flux1[p] = rho * s.u1[p];
      flux2[p] = rho * s.u2[p];
      nu1[p] = -(s.u1[p] * s.u1x[p] + s.u2[p] * s.u1y[p]) + s.rx[p] * pfac -
               frac * (v1[p] + curl_b) + inv * (bgb1 - hgb1);
      nu2[p] = -(s.u1[p] * s.u2x[p] + s.u2[p] * s.u2y[p]) + s.ry[p] * pfac - frac * v2[p] +
               inv * (bgb2 - hgb2);
      nb1[p] = -(s.u1[p] * s.b1x[p] + s.u2[p] * s.b1y[p]) +
               (s.b1[p] * s.u1x[p] + s.b2[p] * s.u1y[p]) - s.b1[p] * div;
      nb2[p] = -(s.u1[p] * s.b2x[p] + s.u2[p] * s.b2y[p]) +
               (s.b1[p] * s.u2x[p] + s.b2[p] * s.u2y[p]) - s.b2[p] * div;
    }
    const VectorField flux(from_physical_dealiased(gp, flux1), from_physical_dealiased(gp, flux2));
    out.rho -= divergence(flux);
    out.u.x1 += from_physical_dealiased(gp, nu1);
    out.u.x2 += from_physical_dealiased(gp, nu2);
    out.b.x1 += from_physical_dealiased(gp, nb1);
    out.b.x2 += from_physical_dealiased(gp, nb2);
  }

  // Every term of the induction equation has zero mean when div b = 0.
  zero_mean(out.b);
  return out;
}

Tendency rhs_primitive(const State& state, const PhysParams& params) {
  params.validate();
  const GridPtr& gp = state.grid_ptr();
  const Samples s(state);
  require_not_degenerate(s.r);
  const RealArray v1 = to_physical(viscous_component(state.u, params, 1));
  const RealArray v2 = to_physical(viscous_component(state.u, params, 2));

  const std::size_t n = s.size();
  RealArray m1(n), m2(n), tu1(n), tu2(n), tb1(n), tb2(n);
  for (std::size_t p = 0; p < n; ++p) {
    const double rt = 1.0 + s.r[p];
    const double pp = params.pressure.derivative(rt);
    const double div = s.u1x[p] + s.u2y[p];
    const double curl_b = s.b1y[p] - s.b2x[p];
    const double bgb1 = s.b1[p] * s.b1x[p] + s.b2[p] * s.b1y[p];
    const double bgb2 = s.b1[p] * s.b2x[p] + s.b2[p] * s.b2y[p];
    const double hgb1 = s.b1[p] * s.b1x[p] + s.b2[p] * s.b2x[p];
    const double hgb2 = s.b1[p] * s.b1y[p] + s.b2[p] * s.b2y[p];
    m1[p] = rt * s.u1[p];
    m2[p] = rt * s.u2[p];
    tu1[p] = -(s.u1[p] * s.u1x[p] + s.u2[p] * s.u1y[p]) +
             (v1[p] + curl_b - pp * s.rx[p] + bgb1 - hgb1) / rt;
    tu2[p] = -(s.u1[p] * s.u2x[p] + s.u2[p] * s.u2y[p]) + (v2[p] - pp * s.ry[p] + bgb2 - hgb2) / rt;
    // B_t = B.grad u - u.grad B - B div u with B = b + e2
    tb1[p] = (s.b1[p] * s.u1x[p] + (1.0 + s.b2[p]) * s.u1y[p]) -
             (s.u1[p] * s.b1x[p] + s.u2[p] * s.b1y[p]) - s.b1[p] * div;
    tb2[p] = (s.b1[p] * s.u2x[p] + (1.0 + s.b2[p]) * s.u2y[p]) -
             (s.u1[p] * s.b2x[p] + s.u2[p] * s.b2y[p]) - (1.0 + s.b2[p]) * div;
  }
  Tendency out(gp);
  out.rho = -1.0 * divergence(VectorField(from_physical_dealiased(gp, m1), from_physical_dealiased(gp, m2)));
  out.u.x1 = from_physical_dealiased(gp, tu1);
  out.u.x2 = from_physical_dealiased(gp, tu2);
  out.b.x1 = from_physical_dealiased(gp, tb1);
  out.b.x2 = from_physical_dealiased(gp, tb2);
  zero_mean(out.b);
  return out;
}

// ---------------------------------------------------------------- omega ---

ScalarField omega(const State& state, const PhysParams& params) {
  const GridPtr& gp = state.grid_ptr();
  const RealArray r = to_physical(state.rho);
  const RealArray b1 = to_physical(state.b.x1);
  const RealArray b2 = to_physical(state.b.x2);
  const RealArray b1x = to_physical(derivative(state.b.x1, Axis::x1));
  const RealArray b1y = to_physical(derivative(state.b.x1, Axis::x2));

  const std::size_t n = r.size();
  RealArray pressure_part(n), transport(n);
  for (std::size_t p = 0; p < n; ++p) {
    // P(rho+1) - P(1) = rho + q(rho); the linear part is differentiated exactly.
    pressure_part[p] = params.pressure.q(r[p]) + 0.5 * (b1[p] * b1[p] + b2[p] * b2[p]);
    transport[p] = b1[p] * b1x[p] + b2[p] * b1y[p];
  }
  ScalarField out = perp_div(state.b) - derivative(state.rho, Axis::x1);
  out -= derivative(from_physical_dealiased(gp, pressure_part), Axis::x1);
  out += from_physical_dealiased(gp, transport);
  return out;
}

ScalarField omega_rhs(const State& state, const PhysParams& params) {
  if (!params.normalized()) {
    throw Error("omega_rhs is only defined for the normalized coefficients mu = 1, lambda = 0");
  }
  const GridPtr& gp = state.grid_ptr();
  const Samples s(state);
  require_not_degenerate(s.r);
  const ScalarField om = omega(state, params);
  const RealArray omx = to_physical(derivative(om, Axis::x1));
  const RealArray omy = to_physical(derivative(om, Axis::x2));
  const RealArray u1xy = to_physical(mixed_derivative(state.u.x1, 1, 1));
  const RealArray u1yy = to_physical(mixed_derivative(state.u.x1, 0, 2));
  const PressureLaw& law = params.pressure;

  const std::size_t n = s.size();
  // Y = b.grad u1 - b1 div u and Z = b.grad u2 - b2 div u feed both the
  // perp-divergence term and b.grad(b.grad u1 - b1 div u).
  RealArray y(n), z(n);
  for (std::size_t p = 0; p < n; ++p) {
    const double div = s.u1x[p] + s.u2y[p];
    y[p] = s.b1[p] * s.u1x[p] + s.b2[p] * s.u1y[p] - s.b1[p] * div;
    z[p] = s.b1[p] * s.u2x[p] + s.b2[p] * s.u2y[p] - s.b2[p] * div;
  }
  const ScalarField yhat = from_physical_dealiased(gp, y);
  const ScalarField zhat = from_physical_dealiased(gp, z);
  const RealArray yx = to_physical(derivative(yhat, Axis::x1));
  const RealArray yy = to_physical(derivative(yhat, Axis::x2));

  RealArray w(n), x(n);
  for (std::size_t p = 0; p < n; ++p) {
    const double rt = 1.0 + s.r[p];
    const double pp = law.derivative(rt);
    const double px = pp * s.rx[p];
    const double py = pp * s.ry[p];
    const double div = s.u1x[p] + s.u2y[p];
    const double b1 = s.b1[p], b2 = s.b2[p];
    const double bb = b1 * b1 + b2 * b2;
    const double half_grad_bb_x = b1 * s.b1x[p] + b2 * s.b2x[p];
    const double half_grad_bb_y = b1 * s.b1y[p] + b2 * s.b2y[p];
    const double bgu1 = b1 * s.u1x[p] + b2 * s.u1y[p];
    const double bgu2 = b1 * s.u2x[p] + b2 * s.u2y[p];

    w[p] = -(s.u1[p] * omx[p] + s.u2[p] * omy[p])               // -u.grad Omega
           + (s.u1x[p] * s.b2x[p] + s.u2x[p] * s.b2y[p])          // d1u.grad b2
           + (s.u1x[p] * half_grad_bb_x + s.u2x[p] * half_grad_bb_y)  // +(1/2) d1u.grad|b|^2
           + (s.u1x[p] * px + s.u2x[p] * py)                      // d1u.grad P
           - (s.u1y[p] * s.b1x[p] + s.u2y[p] * s.b1y[p])          // -d2u.grad b1
           + (b1 * u1xy[p] + b2 * u1yy[p])                        // b.grad(d2 u1)
           + (s.u1y[p] * s.b1x[p] - s.u1x[p] * s.b1y[p])          // perp_grad u1 . grad b1
           - div * (b1 * s.b1x[p] + b2 * s.b1y[p])                // -div u (b.grad b1)
           + (b1 * yx[p] + b2 * yy[p]);                           // b.grad(b.grad u1 - b1 div u)
    x[p] = -(b1 * s.u1y[p] - b2 * s.u1x[p])                       // -b.perp_grad u1
           - (b1 * bgu1 + b2 * bgu2)                              // -b.(b.grad u)
           + bb * div                                             // |b|^2 div u
           + (pp * rt - 1.0) * div;                               // (P' rho_total - 1) div u
  }

  ScalarField out = 2.0 * mixed_derivative(state.u.x1, 2, 0);
  out += mixed_derivative(state.u.x1, 0, 2);
  out += mixed_derivative(state.u.x2, 1, 1);
  out += from_physical_dealiased(gp, w);
  out += derivative(from_physical_dealiased(gp, x), Axis::x1);
  out += derivative(yhat, Axis::x2);
  out -= derivative(zhat, Axis::x1);
  return out;
}

ScalarField u1_omega_residual(const State& state, const PhysParams& params) {
  const GridPtr& gp = state.grid_ptr();
  const Tendency t = rhs(state, params);
  const ScalarField om = omega(state, params);
  const ScalarField lap_u1 = laplacian(state.u.x1);
  const RealArray r = to_physical(state.rho);
  const RealArray u1 = to_physical(state.u.x1);
  const RealArray u2 = to_physical(state.u.x2);
  const RealArray u1x = to_physical(derivative(state.u.x1, Axis::x1));
  const RealArray u1y = to_physical(derivative(state.u.x1, Axis::x2));
  const RealArray lap_om = to_physical(lap_u1 + om);

  RealArray nonlinear(r.size());
  for (std::size_t p = 0; p < r.size(); ++p) {
    nonlinear[p] = u1[p] * u1x[p] + u2[p] * u1y[p] + r[p] / (1.0 + r[p]) * lap_om[p];
  }
  ScalarField out = t.u.x1 - lap_u1;
  out -= om;
  out += from_physical_dealiased(gp, nonlinear);
  return out;
}

// ---------------------------------------------------------------- ledger ---

L2Ledger l2_ledger(const State& state, const PhysParams& params) {
  const Grid& g = state.grid();
  const RealArray r = to_physical(state.rho);
  const RealArray rx = to_physical(derivative(state.rho, Axis::x1));
  const RealArray ry = to_physical(derivative(state.rho, Axis::x2));
  const RealArray u1 = to_physical(state.u.x1);
  const RealArray u2 = to_physical(state.u.x2);
  const RealArray div = to_physical(divergence(state.u));

  const std::size_t n = r.size();
  RealArray kinetic(n), i2(n), i3(n);
  for (std::size_t p = 0; p < n; ++p) {
    kinetic[p] = (1.0 + r[p]) * (u1[p] * u1[p] + u2[p] * u2[p]);
    i2[p] = -(u1[p] * rx[p] + u2[p] * ry[p]) * r[p] - r[p] * r[p] * div[p];
    i3[p] = (1.0 - params.pressure.derivative(1.0 + r[p])) * (rx[p] * u1[p] + ry[p] * u2[p]);
  }

  L2Ledger out;
  out.energy = 0.5 * (grid_integral(g, kinetic) + sobolev_norm_sq(state.rho, 0.0) +
                      sobolev_norm_sq(state.b, 0.0));
  out.dissipation = params.mu * gradient_norm_sq(state.u, 0.0) +
                    params.lambda * sobolev_norm_sq(divergence(state.u), 0.0);
  out.i2 = grid_integral(g, i2);
  out.i3 = grid_integral(g, i3);
  return out;
}

// -------------------------------------------------------------- helpers ---

PhysicalFields reconstruct_physical(const State& state) {
  PhysicalFields out{to_physical(state.rho), to_physical(state.u.x1), to_physical(state.u.x2),
                     to_physical(state.b.x1), to_physical(state.b.x2)};
  for (double& v : out.rho_total) v += 1.0;
  for (double& v : out.b2_total) v += 1.0;
  return out;
}

namespace {

ScalarField mirror_k1(const ScalarField& f, double sign) {
  const Grid& g = f.grid();
  ScalarField out(f.grid_ptr());
  auto src = f.coeffs();
  auto dst = out.coeffs();
  for (int i = 0; i < g.n1(); ++i) {
    const int mirrored = g.row_of(-g.k1(i) == g.n1() / 2 ? g.k1(i) : -g.k1(i));
    for (int j = 0; j < g.nh(); ++j) dst[g.index(i, j)] = sign * src[g.index(mirrored, j)];
  }
  return out;
}

}  // namespace

State reflect_x1(const State& state) {
  State out(state.grid_ptr());
  out.time = state.time;
  out.rho = mirror_k1(state.rho, 1.0);
  out.u.x1 = mirror_k1(state.u.x1, -1.0);
  out.u.x2 = mirror_k1(state.u.x2, 1.0);
  out.b.x1 = mirror_k1(state.b.x1, -1.0);
  out.b.x2 = mirror_k1(state.b.x2, 1.0);
  return out;
}

void project_divergence_free(VectorField& b) {
  const Grid& g = b.grid();
  auto c1 = b.x1.coeffs();
  auto c2 = b.x2.coeffs();
  for (int i = 0; i < g.n1(); ++i) {
    const double k1 = g.k1(i);
    for (int j = 0; j < g.nh(); ++j) {
      const double k2 = j;
      const double kk = k1 * k1 + k2 * k2;
      const std::size_t idx = g.index(i, j);
      if (kk == 0.0) {
        c1[idx] = c2[idx] = Complex{};
        continue;
      }
      const Complex kdotb = (k1 * c1[idx] + k2 * c2[idx]) / kk;
      c1[idx] -= k1 * kdotb;
      c2[idx] -= k2 * kdotb;
    }
  }
}

}  // namespace mhd2d
