#pragma once

#include "mhd2d/config.hpp"
#include "mhd2d/state.hpp"

namespace mhd2d {

/// Random smooth zero-mean data with b0 = perp_grad(psi), rescaled so that
/// ||rho0||_{H^s} + ||u0||_{H^s} + ||b0||_{H^s} = epsilon. Disabled fields are zero.
State make_initial_data(const GridPtr& grid, const InitConfig& init, double s);

inline State make_initial_data(const RunConfig& config) {
  return make_initial_data(Grid::make(config.n1, config.n2), config.init, config.diag.s);
}

/// Scales the state so the H^s norm sum equals epsilon (no-op on the zero state).
void rescale_to(State& state, double epsilon, double s);

/// (state + reflect_x1(state)) / 2
State symmetrize(const State& state);

}  // namespace mhd2d
