#pragma once

#include <span>
#include <vector>

#include "strainlab/field.hpp"

namespace strainlab {

/// Inverse transform of one component: real samples f(x_j) = sum_k fhat(k) e^{ik.x_j}.
/// The coefficients are assumed conjugate symmetric; only the half spectrum is read.
std::vector<double> to_physical(const Grid3& grid, std::span<const Complex> coeffs);

/// Forward transform of real samples; the result is exactly conjugate symmetric.
std::vector<Complex> from_physical(const Grid3& grid, std::span<const double> samples);

template <std::size_t C>
PhysicalField<C> to_physical(const SpectralField<C>& f) {
  PhysicalField<C> out(f.grid());
  for (std::size_t c = 0; c < C; ++c) out.comps[c] = to_physical(f.grid(), f.component(c));
  return out;
}

template <std::size_t C>
SpectralField<C> from_physical(const PhysicalField<C>& p) {
  SpectralField<C> out(p.grid);
  for (std::size_t c = 0; c < C; ++c) {
    auto coeffs = from_physical(p.grid, p.comps[c]);
    std::copy(coeffs.begin(), coeffs.end(), out.component(c).begin());
  }
  return out;
}

/// Copies the modes with |k_i| < min(n_from, n_to)/2 onto the target grid
/// (Fourier zero padding or truncation). Nyquist planes are dropped so the
/// result stays conjugate symmetric.
void resample_component(const Grid3& from, std::span<const Complex> src, const Grid3& to,
                        std::span<Complex> dst);

template <std::size_t C>
SpectralField<C> resample(const SpectralField<C>& f, const Grid3& to) {
  SpectralField<C> out(to);
  for (std::size_t c = 0; c < C; ++c)
    resample_component(f.grid(), f.component(c), to, out.component(c));
  return out;
}

/// Zeroes every mode with max_i |k_i| > cutoff.
template <std::size_t C>
SpectralField<C> truncate(SpectralField<C> f, int cutoff) {
  for_each_mode(f.grid(), [&](std::size_t m, const Wavevector& k) {
    if (max_abs_component(k) > cutoff)
      for (std::size_t c = 0; c < C; ++c) f.at(c, m) = Complex{};
  });
  return f;
}

/// Largest max_i |k_i| over modes with a nonzero coefficient (0 for the zero field).
int band_limit(const Grid3& grid, std::span<const Complex> coeffs);

template <std::size_t C>
int band_limit(const SpectralField<C>& f) {
  int b = 0;
  for (std::size_t c = 0; c < C; ++c) b = std::max(b, band_limit(f.grid(), f.component(c)));
  return b;
}

/// Largest |c(k) - conj(c(-k))| over all modes, relative to the largest |c|.
double conjugate_symmetry_defect(const Grid3& grid, std::span<const Complex> coeffs);

}  // namespace strainlab
