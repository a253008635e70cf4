#include "mhd2d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mhd2d/dynamics.hpp"
#include "mhd2d/error.hpp"

namespace mhd2d {

double time_weight(int k, double sigma, double t) { return std::pow(1.0 + t, k - sigma); }

void DiagnosticsConfig::validate() const {
  if (!(sigma > 0.0 && sigma < 0.5)) throw Error("sigma must satisfy 0 < sigma < 1/2");
  if (!(sample_interval > 0.0)) throw Error("sample_interval must be positive");
}

namespace {

double vec_aniso(const VectorField& v, int order, double m) {
  return aniso_norm_sq(v.x1, order, m) + aniso_norm_sq(v.x2, order, m);
}

VectorField d2(const VectorField& v) {
  return VectorField(derivative(v.x1, Axis::x2), derivative(v.x2, Axis::x2));
}

}  // namespace

Snapshot take_snapshot(const State& state, const PhysParams& params, const DiagnosticsConfig& config) {
  const double s = config.s;
  Snapshot out;
  out.t = state.time;
  out.x0 = sobolev_norm_sq(state.u, s) + sobolev_norm_sq(state.rho, s) + sobolev_norm_sq(state.b, s);
  out.grad_u = gradient_norm_sq(state.u, s);

  const VectorField d2u = d2(state.u);
  const ScalarField d1u1 = derivative(state.u.x1, Axis::x1);
  const ScalarField curl_b = perp_div(state.b);
  const ScalarField om = omega(state, params);
  for (int k = 1; k <= 3; ++k) {
    const double m = s - k;
    out.vert[k] = vec_aniso(state.u, 1, m) + aniso_norm_sq(state.rho, 1, m) + vec_aniso(state.b, 1, m);
    out.grad_vert[k] = gradient_norm_sq(d2u, m);
    out.rho_vv[k] = aniso_norm_sq(state.rho, 2, m - 1);
    out.curl_b_vv[k] = aniso_norm_sq(curl_b, 2, m - 2);
    out.d1u1[k] = sobolev_norm_sq(d1u1, m);
    out.grad_d1u1[k] = gradient_norm_sq(d1u1, m);
    out.omega[k] = sobolev_norm_sq(om, m);
  }
  out.low = sobolev_norm_sq(state.u, s - 1) + sobolev_norm_sq(state.b, s - 1) +
            sobolev_norm_sq(state.rho, s - 1);
  out.grad_u_low = gradient_norm_sq(state.u, s - 1);
  out.u2_hom = homogeneous_norm_sq(state.u.x2, s - 2);
  out.grad_u2_hom = homogeneous_norm_sq(state.u.x2, s - 1);
  out.d2b_low = vec_aniso(state.b, 1, s - 1);
  return out;
}

double total_energy(const Functionals& f) {
  double sum = f.e0 + f.a_tilde + f.frak_u + f.frak_e;
  for (int k : {1, 3}) sum += f.e[k] + f.p[k] + f.b[k] + f.f[k] + f.a[k];
  return sum;
}

EnergyLedger::EnergyLedger(DiagnosticsConfig config, PhysParams params)
    : config_(config), params_(std::move(params)) {
  config_.validate();
}

void EnergyLedger::observe(const State& state) { observe(take_snapshot(state, params_, config_)); }

void EnergyLedger::observe(const Snapshot& now) {
  if (!snapshots_.empty() && !(now.t > snapshots_.back().t)) {
    throw Error("EnergyLedger::observe: time must increase between observations");
  }
  Parts& p = parts_;
  const double t = now.t;
  auto sup = [](double& acc, double v) { acc = std::max(acc, v); };

  if (!snapshots_.empty()) {
    const Snapshot& prev = snapshots_.back();
    const double tp = prev.t;
    const double half = 0.5 * (t - tp);
    // Trapezoid panel of int w_k(tau) q(tau).
    auto panel = [&](int k, double qp, double qn) { return half * (w(k, tp) * qp + w(k, t) * qn); };
    p.int_x0 += panel(-1, prev.x0, now.x0);
    p.int_grad_u += panel(0, prev.grad_u, now.grad_u);
    for (int k = 1; k <= 3; ++k) {
      p.int_grad_vert[k] += panel(k, prev.grad_vert[k], now.grad_vert[k]);
      p.int_rho_vv[k] += panel(k, prev.rho_vv[k], now.rho_vv[k]);
      p.int_curl_b_vv[k] += panel(k, prev.curl_b_vv[k], now.curl_b_vv[k]);
      p.int_grad_d1u1[k] += panel(k, prev.grad_d1u1[k], now.grad_d1u1[k]);
      p.int_omega[k] += panel(k, prev.omega[k], now.omega[k]);
    }
    p.int_omega_low += panel(0, prev.omega[1], now.omega[1]);
    p.int_grad_u_low += half * (prev.grad_u_low + now.grad_u_low);
    p.int_grad_u2 += panel(2, prev.grad_u2_hom, now.grad_u2_hom);
  }
  sup(p.sup_x0, w(0, t) * now.x0);
  for (int k = 1; k <= 3; ++k) {
    sup(p.sup_vert[k], w(k, t) * now.vert[k]);
    sup(p.sup_f[k], w(k, t) * (now.d1u1[k] + now.omega[k]));
    sup(p.sup_d1u1[k], w(k, t) * now.d1u1[k]);
  }
  sup(p.sup_low, now.low);
  sup(p.sup_u2, w(2, t) * now.u2_hom);

  Functionals f;
  f.e0 = p.sup_x0 + p.int_x0 + p.int_grad_u;
  f.sup_energy = p.sup_x0;
  for (int k = 1; k <= 3; ++k) {
    f.e[k] = p.sup_vert[k] + p.int_grad_vert[k];
    f.p[k] = p.int_rho_vv[k];
    f.b[k] = p.int_curl_b_vv[k];
    f.f[k] = p.sup_f[k] + p.int_grad_d1u1[k];
    f.a[k] = p.int_omega[k];
    f.d1u1[k] = p.sup_d1u1[k] + p.int_grad_d1u1[k];
  }
  f.a_tilde = p.int_omega_low;
  f.frak_e = p.sup_low + p.int_grad_u_low;
  f.frak_u = p.sup_u2 + p.int_grad_u2;

  snapshots_.push_back(now);
  history_.push_back(f);
}

const Functionals& EnergyLedger::current() const {
  if (history_.empty()) throw Error("EnergyLedger is empty");
  return history_.back();
}

namespace {

const char* const kSnapshotColumns[] = {
    "x0",        "grad_u",     "vert1",      "vert2",      "vert3",      "grad_vert1", "grad_vert2",
    "grad_vert3", "rho_vv1",   "rho_vv2",    "rho_vv3",    "curl_b_vv1", "curl_b_vv2", "curl_b_vv3",
    "d1u1_1",    "d1u1_2",     "d1u1_3",     "grad_d1u1_1", "grad_d1u1_2", "grad_d1u1_3", "omega1",
    "omega2",    "omega3",     "low",        "grad_u_low", "u2_hom",     "grad_u2_hom", "d2b_low"};

std::vector<double> snapshot_columns(const Snapshot& s) {
  std::vector<double> v{s.x0, s.grad_u};
  for (const auto* arr : {&s.vert, &s.grad_vert, &s.rho_vv, &s.curl_b_vv, &s.d1u1, &s.grad_d1u1, &s.omega}) {
    for (int k = 1; k <= 3; ++k) v.push_back((*arr)[k]);
  }
  for (double x : {s.low, s.grad_u_low, s.u2_hom, s.grad_u2_hom, s.d2b_low}) v.push_back(x);
  return v;
}

std::vector<double> functional_columns(const Functionals& f) {
  std::vector<double> v{f.e0};
  for (const auto* arr : {&f.e, &f.p, &f.b, &f.f, &f.a}) {
    for (int k = 1; k <= 3; ++k) v.push_back((*arr)[k]);
  }
  for (double x : {f.a_tilde, f.frak_e, f.frak_u, total_energy(f)}) v.push_back(x);
  return v;
}

}  // namespace

double snapshot_value(const Snapshot& snapshot, double sigma, const std::string& name) {
  if (name.size() == 2 && name[0] == 'w' && name[1] >= '0' && name[1] <= '3') {
    return time_weight(name[1] - '0', sigma, snapshot.t);
  }
  if (name == "t") return snapshot.t;
  const auto values = snapshot_columns(snapshot);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (name == kSnapshotColumns[i]) return values[i];
  }
  throw Error("unknown diagnostic quantity '" + name + "'");
}

std::string EnergyLedger::csv_header() const {
  std::ostringstream os;
  os << "t,w0,w1,w2,w3";
  for (const char* c : kSnapshotColumns) os << ',' << c;
  os << ",E0,E1,E2,E3,P1,P2,P3,B1,B2,B3,F1,F2,F3,A1,A2,A3,A_tilde,frak_E,frak_U,E_total";
  return os.str();
}

std::string EnergyLedger::csv_row(std::size_t i) const {
  const Snapshot& s = snapshots_.at(i);
  std::ostringstream os;
  os.precision(17);
  os << s.t;
  for (int k = 0; k <= 3; ++k) os << ',' << w(k, s.t);
  for (double v : snapshot_columns(s)) os << ',' << v;
  for (double v : functional_columns(history_.at(i))) os << ',' << v;
  return os.str();
}

std::string EnergyLedger::csv() const {
  std::string out = csv_header() + '\n';
  for (std::size_t i = 0; i < snapshots_.size(); ++i) out += csv_row(i) + '\n';
  return out;
}

std::string DecayFit::report() const {
  std::ostringstream os;
  os.precision(6);
  os << "quantity: " << quantity << "\nwindow: [" << t0 << ", " << t1 << "]\nexponent: " << exponent
     << "\nr_squared: " << r_squared << "\nsamples: " << samples
     << "\ndegenerate: " << (degenerate ? "true" : "false") << '\n';
  return os.str();
}

DecayFit decay_fit(const std::vector<double>& times, const std::vector<double>& values, double t0,
                   double t1, std::string quantity) {
  if (times.size() != values.size()) throw Error("decay_fit: size mismatch");
  DecayFit fit;
  fit.quantity = std::move(quantity);
  fit.t0 = t0;
  fit.t1 = t1;
  constexpr double floor = std::numeric_limits<double>::min();
  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t0 || times[i] > t1) continue;
    double v = values[i];
    if (!(v > floor)) {
      v = floor;
      fit.degenerate = true;
    }
    x.push_back(std::log1p(times[i]));
    y.push_back(std::log(v));
  }
  fit.samples = x.size();
  if (fit.samples < 10) throw Error("decay_fit: fewer than 10 samples in the window");

  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error("decay_fit: window holds a single time");
  fit.exponent = sxy / sxx;
  // Residual sum relative to the spread of log q; a flat series fits exactly.
  const double sse = std::max(0.0, syy - fit.exponent * sxy);
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  return fit;
}

DecayFit decay_fit(const EnergyLedger& ledger, const std::string& quantity, double t0, double t1) {
  std::vector<double> times, values;
  for (const Snapshot& s : ledger.snapshots()) {
    times.push_back(s.t);
    values.push_back(snapshot_value(s, ledger.config().sigma, quantity));
  }
  return decay_fit(times, values, t0, t1, quantity);
}

std::vector<MonitorEntry> monitor_ratios(const Functionals& f, double epsilon, double ceiling) {
  const double eps2 = epsilon * epsilon;
  auto ratio = [](double measured, double scale) {
    if (measured == 0.0) return 0.0;
    return measured / scale;
  };
  std::vector<MonitorEntry> out;
  auto add = [&](std::string family, int k, bool sup_type, int power, double measured) {
    MonitorEntry e;
    e.family = std::move(family);
    e.k = k;
    e.sup_type = sup_type;
    e.eps_power = power;
    e.ratio = ratio(measured, power == 2 ? eps2 : epsilon);
    e.running_max = e.ratio;
    e.pass = e.ratio <= ceiling;
    out.push_back(std::move(e));
  };
  add("weighted_energy", 0, true, 2, f.sup_energy);
  add("lower_energy", 0, true, 2, f.frak_e);
  for (int k = 1; k <= 3; ++k) add("vertical", k, true, 2, f.e[k]);
  for (int k = 1; k <= 3; ++k) add("rho_vertical_integral", k, false, 1, f.p[k]);
  for (int k = 1; k <= 3; ++k) add("curl_b_vertical_integral", k, false, 2, f.b[k]);
  for (int k = 1; k <= 3; ++k) add("d1u1", k, true, 2, f.d1u1[k]);
  return out;
}

std::vector<MonitorEntry> theorem_monitor(const EnergyLedger& ledger, double epsilon, double ceiling) {
  std::vector<MonitorEntry> out = monitor_ratios(ledger.current(), epsilon, ceiling);
  for (const Functionals& f : ledger.history()) {
    const auto r = monitor_ratios(f, epsilon, ceiling);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i].running_max = std::max(out[i].running_max, r[i].ratio);
    }
  }
  for (auto& e : out) e.pass = e.running_max <= ceiling;
  return out;
}

}  // namespace mhd2d
