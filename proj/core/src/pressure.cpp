#include "mhd2d/pressure.hpp"

#include <cmath>

#include "mhd2d/error.hpp"

namespace mhd2d {

PressureLaw::PressureLaw(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0)) throw Error("pressure law exponent gamma must be positive");
}

double PressureLaw::pressure(double rho_total) const {
  return std::expm1(gamma_ * std::log(rho_total)) / gamma_;
}

double PressureLaw::derivative(double rho_total) const {
  return is_linear() ? 1.0 : std::pow(rho_total, gamma_ - 1.0);
}

double PressureLaw::second_derivative(double rho_total) const {
  return is_linear() ? 0.0 : (gamma_ - 1.0) * std::pow(rho_total, gamma_ - 2.0);
}

double PressureLaw::q(double rho) const {
  if (is_linear()) return 0.0;
  return std::expm1(gamma_ * std::log1p(rho)) / gamma_ - rho;
}

double PressureLaw::q1(double rho) const {
  const double g1 = gamma_ - 1.0;
  if (g1 == 0.0) return std::log1p(rho) - rho;
  return std::expm1(g1 * std::log1p(rho)) / g1 - rho;
}

}  // namespace mhd2d
