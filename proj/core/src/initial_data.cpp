#include "mhd2d/initial_data.hpp"

#include <cmath>

#include "mhd2d/dynamics.hpp"
#include "mhd2d/spectral.hpp"

namespace mhd2d {

namespace {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed * 0x9e3779b97f4a7c15ULL + stream;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void rescale_to(State& state, double epsilon, double s) {
  const double total = sobolev_norm(state.rho, s) + std::sqrt(sobolev_norm_sq(state.u, s)) +
                       std::sqrt(sobolev_norm_sq(state.b, s));
  if (total == 0.0) return;
  const double factor = epsilon / total;
  state.rho *= factor;
  state.u *= factor;
  state.b *= factor;
}

State make_initial_data(const GridPtr& grid, const InitConfig& init, double s) {
  State state(grid);
  if (init.epsilon == 0.0) return state;
  const double decay = init.decay_rate;
  if (init.enable_rho) state.rho = random_smooth_field(grid, stream_seed(init.seed, 1), 1.0, decay);
  if (init.enable_u) {
    state.u.x1 = random_smooth_field(grid, stream_seed(init.seed, 2), 1.0, decay);
    state.u.x2 = random_smooth_field(grid, stream_seed(init.seed, 3), 1.0, decay);
  }
  if (init.enable_b) {
    state.b = perp_grad(random_smooth_field(grid, stream_seed(init.seed, 4), 1.0, decay));
  }
  rescale_to(state, init.epsilon, s);
  return state;
}

State symmetrize(const State& state) {
  State out = reflect_x1(state);
  out.axpy(1.0, state);
  out.rho *= 0.5;
  out.u *= 0.5;
  out.b *= 0.5;
  return out;
}

}  // namespace mhd2d
