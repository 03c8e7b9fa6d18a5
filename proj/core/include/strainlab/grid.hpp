#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>

namespace strainlab {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Volume of the periodic box [0, 2pi)^3.
inline constexpr double kBoxVolume = kTwoPi * kTwoPi * kTwoPi;

using Wavevector = std::array<int, 3>;

/// Uniform periodic grid on [0, 2pi)^3 together with its integer wavevector
/// lattice. Modes are stored row-major over (k1, k2, k3) in standard FFT index
/// order: index i maps to wavenumber i for i < n/2 and i - n otherwise.
class Grid3 {
 public:
  /// `dealias_cutoff < 0` selects floor(n/3). Throws std::invalid_argument
  /// unless n is a power of two >= 8 and the cutoff respects the 2/3 rule.
  explicit Grid3(int n, int dealias_cutoff = -1);

  int n() const { return n_; }
  int cutoff() const { return cutoff_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  /// Number of complex outputs of a real-to-complex transform.
  std::size_t half_size() const {
    return static_cast<std::size_t>(n_) * n_ * (n_ / 2 + 1);
  }

  int wavenumber(int index) const { return index < n_ / 2 ? index : index - n_; }
  int index_of(int k) const { return k >= 0 ? k : k + n_; }

  /// Wavenumber used by odd-symbol (derivative) multipliers: the Nyquist
  /// index has no conjugate partner, so its derivative is set to zero.
  int derivative_wavenumber(int index) const {
    return index == n_ / 2 ? 0 : wavenumber(index);
  }

  std::size_t flat(int i, int j, int l) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + l;
  }
  /// Flat index of the mode -k given the flat index of k.
  std::size_t conjugate_flat(int i, int j, int l) const {
    return flat((n_ - i) % n_, (n_ - j) % n_, (n_ - l) % n_);
  }

  /// Grid spacing 2pi/n.
  double spacing() const { return kTwoPi / n_; }

  bool operator==(const Grid3& other) const = default;

 private:
  int n_;
  int cutoff_;
};

/// Calls fn(flat_index, k) for every mode, with k the signed wavevector.
template <class Fn>
void for_each_mode(const Grid3& grid, Fn&& fn) {
  const int n = grid.n();
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const int k1 = grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const int k2 = grid.wavenumber(j);
      for (int l = 0; l < n; ++l, ++idx) {
        fn(idx, Wavevector{k1, k2, grid.wavenumber(l)});
      }
    }
  }
}

/// Like for_each_mode but passes derivative wavenumbers (Nyquist zeroed).
template <class Fn>
void for_each_derivative_mode(const Grid3& grid, Fn&& fn) {
  const int n = grid.n();
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const int k1 = grid.derivative_wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const int k2 = grid.derivative_wavenumber(j);
      for (int l = 0; l < n; ++l, ++idx) {
        fn(idx, Wavevector{k1, k2, grid.derivative_wavenumber(l)});
      }
    }
  }
}

inline double norm_sq(const Wavevector& k) {
  return static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] +
         static_cast<double>(k[2]) * k[2];
}

inline int max_abs_component(const Wavevector& k) {
  int m = 0;
  for (int c : k) m = c < 0 ? (-c > m ? -c : m) : (c > m ? c : m);
  return m;
}

}  // namespace strainlab
