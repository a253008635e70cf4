#include "mhd2d/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mhd2d/error.hpp"

namespace mhd2d {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'M', 'H', 'D', '2'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 4 + 3 * 4 + 4 * 8;

template <class T>
void put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

template <class T>
T take(const std::string& in, std::size_t& pos) {
  T value;
  std::memcpy(&value, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return value;
}

}  // namespace

std::string encode_checkpoint(const State& state, const PhysParams& params) {
  const Grid& g = state.grid();
  std::string out;
  out.reserve(kHeaderBytes + 5 * std::size_t(g.n1()) * g.n2() * 16);
  out.append(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n1()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n2()));
  put<double>(out, params.mu);
  put<double>(out, params.lambda);
  put<double>(out, params.pressure.gamma());
  put<double>(out, state.time);
  const ScalarField* fields[5] = {&state.rho, &state.u.x1, &state.u.x2, &state.b.x1, &state.b.x2};
  for (const ScalarField* f : fields) {
    for (int k1 = -g.n1() / 2; k1 < g.n1() / 2; ++k1) {
      for (int k2 = -g.n2() / 2; k2 < g.n2() / 2; ++k2) {
        const Complex c = f->mode(k1, k2);
        put<double>(out, c.real());
        put<double>(out, c.imag());
      }
    }
  }
  return out;
}

Checkpoint decode_checkpoint(const std::string& bytes, const GridPtr& grid) {
  if (bytes.size() < kHeaderBytes) throw CheckpointError("checkpoint truncated: header incomplete");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) throw CheckpointError("not a checkpoint: bad magic");
  std::size_t pos = 4;
  const auto version = take<std::uint32_t>(bytes, pos);
  if (version != kVersion) throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  const auto n1 = take<std::uint32_t>(bytes, pos);
  const auto n2 = take<std::uint32_t>(bytes, pos);
  const double mu = take<double>(bytes, pos);
  const double lambda = take<double>(bytes, pos);
  const double gamma = take<double>(bytes, pos);
  const double time = take<double>(bytes, pos);

  const std::size_t expected = kHeaderBytes + 5 * std::size_t(n1) * n2 * 16;
  if (bytes.size() != expected) {
    throw CheckpointError("checkpoint length " + std::to_string(bytes.size()) + " does not match the " +
                          std::to_string(expected) + " bytes implied by its header");
  }
  GridPtr g = grid;
  if (g) {
    if (g->n1() != int(n1) || g->n2() != int(n2)) {
      throw CheckpointError("checkpoint grid " + std::to_string(n1) + "x" + std::to_string(n2) +
                            " does not match the requested grid");
    }
  } else {
    try {
      g = Grid::make(int(n1), int(n2));
    } catch (const Error& e) {
      throw CheckpointError(std::string("checkpoint grid invalid: ") + e.what());
    }
  }
  if (!(gamma > 0.0)) throw CheckpointError("checkpoint gamma must be positive");
  const PhysParams params{mu, lambda, PressureLaw(gamma)};

  Checkpoint cp{State(g), params};
  cp.state.time = time;
  ScalarField* fields[5] = {&cp.state.rho, &cp.state.u.x1, &cp.state.u.x2, &cp.state.b.x1, &cp.state.b.x2};
  const int h1 = int(n1) / 2, h2 = int(n2) / 2;
  for (ScalarField* f : fields) {
    auto c = f->coeffs();
    for (int k1 = -h1; k1 < h1; ++k1) {
      for (int k2 = -h2; k2 < h2; ++k2) {
        const double re = take<double>(bytes, pos);
        const double im = take<double>(bytes, pos);
        if (k2 >= 0) {
          c[g->index(g->row_of(k1), k2)] = Complex(re, im);
        } else if (k2 == -h2) {
          // The stored half plane keeps k2 = +n2/2; it is the conjugate of (-k1, -n2/2).
          c[g->index(g->row_of(-k1), h2)] = Complex(re, -im);
        }
      }
    }
  }
  return cp;
}

void save_checkpoint(const State& state, const PhysParams& params, const std::string& path) {
  const std::string bytes = encode_checkpoint(state, params);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw CheckpointError("failed writing '" + path + "'");
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

Checkpoint load_checkpoint(const std::string& path) { return decode_checkpoint(read_file(path)); }

Checkpoint load_checkpoint(const std::string& path, const GridPtr& grid) {
  return decode_checkpoint(read_file(path), grid);
}

}  // namespace mhd2d
