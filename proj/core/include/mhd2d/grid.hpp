#pragma once

#include <complex>
#include <cstdlib>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <new>
#include <vector>

namespace mhd2d {

using Complex = std::complex<double>;

/// Allocator returning 64-byte aligned storage so every buffer shares the
/// alignment of the FFT plans.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlign{64};

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), kAlign));
  }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlign); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept {
    return true;
  }
};

using RealArray = std::vector<double, AlignedAllocator<double>>;
using ComplexArray = std::vector<Complex, AlignedAllocator<Complex>>;

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// Collocation grid and wavenumber lattice of the periodic box [-pi, pi]^2.
///
/// Physical samples are stored row-major as [i1][i2] with x_j = 2*pi*i_j/n_j
/// (identified with [-pi, pi) on the torus). Spectral coefficients use the
/// real-to-complex half plane: rows i1 in [0, n1) carry k1 in
/// {-n1/2, ..., n1/2-1} in FFT order, columns i2 in [0, n2/2] carry k2 >= 0.
/// Modes with k2 < 0 are implied by Hermitian symmetry.
class Grid : public std::enable_shared_from_this<Grid> {
 public:
  static GridPtr make(int n1, int n2);

  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int nh() const { return n2_ / 2 + 1; }
  std::size_t physical_size() const { return static_cast<std::size_t>(n1_) * n2_; }
  std::size_t spectral_size() const { return static_cast<std::size_t>(n1_) * nh(); }

  std::size_t index(int i1, int i2) const { return static_cast<std::size_t>(i1) * nh() + i2; }

  int k1(int i1) const { return i1 < n1_ / 2 ? i1 : i1 - n1_; }
  int k2(int i2) const { return i2; }
  int row_of(int k1) const { return k1 >= 0 ? k1 : k1 + n1_; }

  double x1(int i1) const;
  double x2(int i2) const;

  /// Two-thirds rule: retained iff |k1| <= n1/3 and |k2| <= n2/3.
  bool retained(int k1, int k2) const {
    return 3 * std::abs(k1) <= n1_ && 3 * std::abs(k2) <= n2_;
  }
  bool retained_at(std::size_t idx) const { return mask_[idx] != 0; }

  /// Multiplicity of a stored half-plane coefficient in full-spectrum sums.
  double hermitian_weight(int i2) const { return (i2 == 0 || 2 * i2 == n2_) ? 1.0 : 2.0; }

  /// Cached table of (1 + |k|^2)^s over the stored half plane.
  const std::vector<double>& sobolev_weights(double s) const;

  /// Forward transform of physical samples; coefficients normalized so that
  /// f(x) = sum_k fhat_k exp(i k.x).
  void forward(const double* in, Complex* out) const;
  /// Inverse transform; `in` is left untouched.
  void inverse(const Complex* in, double* out) const;

  bool same_shape(const Grid& other) const { return n1_ == other.n1_ && n2_ == other.n2_; }

 private:
  Grid(int n1, int n2);

  int n1_;
  int n2_;
  std::vector<unsigned char> mask_;
  void* plan_r2c_ = nullptr;
  void* plan_c2r_ = nullptr;
  mutable std::mutex weight_mutex_;
  mutable std::map<double, std::unique_ptr<std::vector<double>>> weight_cache_;
};

}  // namespace mhd2d
