#pragma once

#include <string>

#include "mhd2d/state.hpp"

namespace mhd2d {

/// Binary layout, little-endian:
///   "MHD2", u32 version = 1, u32 n1, u32 n2,
///   f64 mu, f64 lambda, f64 gamma, f64 time,
///   then rho, u1, u2, b1, b2, each as n1*n2 interleaved (re, im) f64 pairs
///   with k1 = -n1/2 .. n1/2-1 over rows and k2 = -n2/2 .. n2/2-1 over columns.
/// gamma = 1 denotes the linear pressure law.
struct Checkpoint {
  State state;
  PhysParams params;
};

void save_checkpoint(const State& state, const PhysParams& params, const std::string& path);

/// Reads a checkpoint onto a fresh grid. Throws CheckpointError on a bad
/// magic, version or length; nothing is returned on failure.
Checkpoint load_checkpoint(const std::string& path);
/// Same, but requires the stored dimensions to match grid.
Checkpoint load_checkpoint(const std::string& path, const GridPtr& grid);

std::string encode_checkpoint(const State& state, const PhysParams& params);
Checkpoint decode_checkpoint(const std::string& bytes, const GridPtr& grid = nullptr);

}  // namespace mhd2d
