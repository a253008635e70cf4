#include "mhd2d/linear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "mhd2d/error.hpp"

namespace mhd2d {

namespace {

constexpr double kAbscissaSnap = 1e-13;
constexpr long double kRankTol = 1e-12L;

Eigen::Matrix<LComplex, 5, 5> full_matrix(int k1, int k2, long double mu, long double lambda) {
  const LComplex i(0.0L, 1.0L);
  const long double a = k1, c = k2;
  const long double kk = a * a + c * c;
  Eigen::Matrix<LComplex, 5, 5> m = Eigen::Matrix<LComplex, 5, 5>::Zero();
  // rho_t = -div u
  m(0, 1) = -i * a;
  m(0, 2) = -i * c;
  // u1_t = mu Lap u1 + lambda d1 div u - d1 rho + d2 b1 - d1 b2
  m(1, 0) = -i * a;
  m(1, 1) = -mu * kk - lambda * a * a;
  m(1, 2) = -lambda * a * c;
  m(1, 3) = i * c;
  m(1, 4) = -i * a;
  // u2_t = mu Lap u2 + lambda d2 div u - d2 rho
  m(2, 0) = -i * c;
  m(2, 1) = -lambda * a * c;
  m(2, 2) = -mu * kk - lambda * c * c;
  // b_t = perp_grad u1
  m(3, 1) = i * c;
  m(4, 1) = -i * a;
  return m;
}

/// Newton steps on det(A - l I), accepted only while |det| decreases. The
/// QR iteration leaves errors of a few ulps of ||A||, which for |k| ~ 20
/// is visible in polynomial residuals; the polished values are correctly
/// rounded in practice.
LComplex polish(const Matrix4lc& a, LComplex lambda) {
  const Matrix4lc id = Matrix4lc::Identity();
  Eigen::PartialPivLU<Matrix4lc> lu(a - lambda * id);
  long double best = std::abs(lu.determinant());
  for (int iter = 0; iter < 8 && best > 0.0L; ++iter) {
    const LComplex trace = lu.inverse().trace();
    if (trace == LComplex(0.0L)) break;
    const LComplex next = lambda + 1.0L / trace;
    Eigen::PartialPivLU<Matrix4lc> next_lu(a - next * id);
    const long double det = std::abs(next_lu.determinant());
    if (!(det < best)) break;
    lambda = next;
    best = det;
    lu = next_lu;
  }
  return lambda;
}

std::vector<LComplex> reduced_eigenvalues(const ModeMatrix& mm) {
  Eigen::ComplexEigenSolver<Matrix4lc> solver(mm.reduced, false);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverError("eigensolver failed at k = (" + std::to_string(mm.k1) + "," +
                           std::to_string(mm.k2) + ")");
  }
  std::vector<LComplex> out;
  for (int i = 0; i < 4; ++i) out.push_back(polish(mm.reduced, solver.eigenvalues()(i)));
  return out;
}

}  // namespace

ModeMatrix mode_matrix(int k1, int k2, double mu, double lambda) {
  if (k1 == 0 && k2 == 0) throw Error("mode_matrix: k = (0,0) has no constraint reduction");
  PhysParams{mu, lambda, PressureLaw{1.0}}.validate();

  const auto m = full_matrix(k1, k2, mu, lambda);
  ModeMatrix out;
  out.k1 = k1;
  out.k2 = k2;
  out.mu = mu;
  out.lambda = lambda;
  out.full = m.cast<std::complex<double>>();

  // Reduced coordinates (rho, u1, u2, b_kept) -> full vector. k1 b1 + k2 b2 = 0
  // is solved for the b component whose wavenumber has the larger magnitude.
  const bool keep_b1 = std::abs(k2) >= std::abs(k1);
  out.kept_b = keep_b1 ? 3 : 4;
  Eigen::Matrix<LComplex, 5, 4> lift = Eigen::Matrix<LComplex, 5, 4>::Zero();
  for (int r = 0; r < 3; ++r) lift(r, r) = 1.0L;
  if (keep_b1) {
    lift(3, 3) = 1.0L;
    lift(4, 3) = -static_cast<long double>(k1) / k2;
  } else {
    lift(4, 3) = 1.0L;
    lift(3, 3) = -static_cast<long double>(k2) / k1;
  }
  Eigen::Matrix<LComplex, 4, 5> select = Eigen::Matrix<LComplex, 4, 5>::Zero();
  for (int r = 0; r < 3; ++r) select(r, r) = 1.0L;
  select(3, out.kept_b) = 1.0L;
  out.reduced = select * m * lift;
  return out;
}

ModeSpectrum mode_spectrum(int k1, int k2, double mu, double lambda) {
  const ModeMatrix mm = mode_matrix(k1, k2, mu, lambda);
  ModeSpectrum out;
  out.k1 = k1;
  out.k2 = k2;
  for (const LComplex& e : reduced_eigenvalues(mm)) {
    out.eigenvalues.emplace_back(static_cast<double>(e.real()), static_cast<double>(e.imag()));
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](const auto& a, const auto& b) { return a.real() > b.real(); });

  const long double scale = mm.reduced.cwiseAbs().maxCoeff();
  out.spectral_abscissa = out.eigenvalues.front().real();
  if (std::abs(out.spectral_abscissa) <= kAbscissaSnap * static_cast<double>(scale)) {
    out.spectral_abscissa = 0.0;
  }

  Eigen::JacobiSVD<Matrix4lc> svd(mm.reduced);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > kRankTol * sv(0)) ++rank;
  }
  out.kernel_dim = 4 - rank;
  return out;
}

double fourth_order_symbol_check(int k1, int k2) {
  const ModeMatrix mm = mode_matrix(k1, k2);
  const long double kk = static_cast<long double>(k1) * k1 + static_cast<long double>(k2) * k2;
  const long double k1sq = static_cast<long double>(k1) * k1;
  long double worst = 0.0L;
  for (const LComplex& l : reduced_eigenvalues(mm)) {
    const LComplex q = l * l + kk * l + kk;
    worst = std::max(worst, std::abs(q * q - k1sq * kk));
  }
  return static_cast<double>(worst);
}

std::vector<DampingRow> damping_map(int kmax, double mu, double lambda) {
  if (kmax < 1) throw Error("damping_map: kmax must be >= 1");
  std::vector<DampingRow> rows;
  for (int k1 = -kmax; k1 <= kmax; ++k1) {
    for (int k2 = -kmax; k2 <= kmax; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const ModeSpectrum sp = mode_spectrum(k1, k2, mu, lambda);
      rows.push_back({k1, k2, sp.spectral_abscissa, sp.kernel_dim});
    }
  }
  return rows;
}

std::string damping_csv(const std::vector<DampingRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "k1,k2,abscissa,kernel_dim\n";
  for (const auto& r : rows) os << r.k1 << ',' << r.k2 << ',' << r.abscissa << ',' << r.kernel_dim << '\n';
  return os.str();
}

double wave_pair_check(int k2, double mu, double lambda) {
  if (k2 == 0) throw Error("wave_pair_check: k2 must be nonzero");
  const ModeMatrix mm = mode_matrix(0, k2, mu, lambda);
  const std::complex<double> i(0.0, 1.0);
  const double c = k2;
  Eigen::Matrix2cd expected;
  expected << 0.0, -i * c, -i * c, -(mu + lambda) * c * c;
  const int idx[2] = {0, 2};
  double worst = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int col = 0; col < 2; ++col) {
      worst = std::max(worst, std::abs(mm.full(idx[r], idx[col]) - expected(r, col)));
    }
  }
  for (int r : idx) {
    for (int col : {1, 3, 4}) {
      worst = std::max(worst, std::abs(mm.full(r, col)));
      worst = std::max(worst, std::abs(mm.full(col, r)));
    }
  }
  return worst;
}

Vector5c evolve_mode(const ModeMatrix& m, const Vector5c& v, double t) {
  const Matrix5c a = (t * m.full).eval();
  return a.exp() * v;
}

Vector5c mode_amplitudes(const State& state, int k1, int k2) {
  Vector5c v;
  v << state.rho.mode(k1, k2), state.u.x1.mode(k1, k2), state.u.x2.mode(k1, k2),
      state.b.x1.mode(k1, k2), state.b.x2.mode(k1, k2);
  return v;
}

void set_mode_amplitudes(State& state, int k1, int k2, const Vector5c& v) {
  state.rho.set_mode(k1, k2, v(0));
  state.u.x1.set_mode(k1, k2, v(1));
  state.u.x2.set_mode(k1, k2, v(2));
  state.b.x1.set_mode(k1, k2, v(3));
  state.b.x2.set_mode(k1, k2, v(4));
}

}  // namespace mhd2d
