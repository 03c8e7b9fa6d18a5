#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "strainlab/grid.hpp"

namespace strainlab {

/// Fourier coefficients of a real field with C components on a Grid3.
/// f(x) = sum_k fhat(k) exp(i k.x). Six-component fields are symmetric 3x3
/// tensors stored as (11, 12, 13, 22, 23, 33).
template <std::size_t C>
class SpectralField {
 public:
  static constexpr std::size_t kComponents = C;

  explicit SpectralField(const Grid3& grid) : grid_(grid) {
    for (auto& c : comps_) c.assign(grid.size(), Complex{});
  }

  const Grid3& grid() const { return grid_; }

  std::span<Complex> component(std::size_t c) { return comps_[c]; }
  std::span<const Complex> component(std::size_t c) const { return comps_[c]; }

  Complex& at(std::size_t c, std::size_t mode) { return comps_[c][mode]; }
  const Complex& at(std::size_t c, std::size_t mode) const { return comps_[c][mode]; }

  /// Frobenius weight of a stored component: off-diagonal tensor entries
  /// appear twice in the full 3x3 matrix.
  static constexpr double weight(std::size_t c) {
    if constexpr (C == 6) {
      return (c == 1 || c == 2 || c == 4) ? 2.0 : 1.0;
    } else {
      (void)c;
      return 1.0;
    }
  }

  SpectralField& operator+=(const SpectralField& o) {
    check_grid(o);
    for (std::size_t c = 0; c < C; ++c)
      for (std::size_t m = 0; m < comps_[c].size(); ++m) comps_[c][m] += o.comps_[c][m];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    check_grid(o);
    for (std::size_t c = 0; c < C; ++c)
      for (std::size_t m = 0; m < comps_[c].size(); ++m) comps_[c][m] -= o.comps_[c][m];
    return *this;
  }
  SpectralField& operator*=(double a) {
    for (auto& comp : comps_)
      for (auto& v : comp) v *= a;
    return *this;
  }
  /// this += a * x
  SpectralField& axpy(double a, const SpectralField& x) {
    check_grid(x);
    for (std::size_t c = 0; c < C; ++c)
      for (std::size_t m = 0; m < comps_[c].size(); ++m) comps_[c][m] += a * x.comps_[c][m];
    return *this;
  }

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }

  bool operator==(const SpectralField& o) const = default;

 private:
  void check_grid(const SpectralField& o) const {
    if (!(o.grid_ == grid_)) throw std::invalid_argument("field grid mismatch");
  }

  Grid3 grid_;
  std::array<std::vector<Complex>, C> comps_;
};

using SpectralScalarField = SpectralField<1>;
using SpectralVectorField = SpectralField<3>;
using SymTensorField = SpectralField<6>;
/// A symmetric tensor field expected to lie in the strain space
/// (trace-free, S + 2 sym_grad div (-Lap)^{-1} S = 0).
using SpectralStrainField = SymTensorField;

/// Stored index of the symmetric tensor entry (i, j), 0-based.
constexpr std::size_t sym_index(int i, int j) {
  constexpr int table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  return static_cast<std::size_t>(table[i][j]);
}

/// Real samples of a C-component field on the n^3 grid, x-major like the
/// spectral storage: sample (i, j, l) sits at x = (i, j, l) * 2pi/n.
template <std::size_t C>
struct PhysicalField {
  Grid3 grid;
  std::array<std::vector<double>, C> comps;

  explicit PhysicalField(const Grid3& g) : grid(g) {
    for (auto& c : comps) c.assign(g.size(), 0.0);
  }
};

}  // namespace strainlab
