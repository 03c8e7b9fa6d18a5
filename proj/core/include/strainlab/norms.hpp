#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "strainlab/field.hpp"
#include "strainlab/reduce.hpp"
#include "strainlab/transform.hpp"

namespace strainlab {

namespace detail {

// |k|^{2 alpha} with the integer cases multiplied out.
inline double shell_weight(double k2, double alpha) {
  if (alpha == 0.0) return 1.0;
  if (k2 == 0.0) return 0.0;
  if (alpha == 1.0) return k2;
  if (alpha == 2.0) return k2 * k2;
  if (alpha == 3.0) return k2 * k2 * k2;
  return std::pow(k2, alpha);
}

inline std::size_t zero_mode() { return 0; }

}  // namespace detail

/// (2pi)^3 sum_k |k|^{2 alpha} |fhat(k)|^2, summed over components with the
/// Frobenius weights (off-diagonal tensor entries count twice).
/// alpha >= -1; negative alpha requires a vanishing mean mode.
template <std::size_t C>
double sobolev_norm_sq(const SpectralField<C>& f, double alpha) {
  if (!(alpha >= -1.0)) throw std::invalid_argument("sobolev_norm_sq: alpha must be >= -1");
  if (alpha < 0.0) {
    for (std::size_t c = 0; c < C; ++c)
      if (f.at(c, detail::zero_mode()) != Complex{})
        throw std::invalid_argument("sobolev_norm_sq: negative alpha needs a zero mean mode");
  }
  const Grid3& g = f.grid();
  std::vector<double> per_mode(g.size());
  for_each_mode(g, [&](std::size_t m, const Wavevector& k) {
    double s = 0.0;
    for (std::size_t c = 0; c < C; ++c) s += SpectralField<C>::weight(c) * std::norm(f.at(c, m));
    per_mode[m] = s == 0.0 ? 0.0 : s * detail::shell_weight(norm_sq(k), alpha);
  });
  return kBoxVolume * pairwise_sum(0, per_mode.size(), [&](std::size_t i) { return per_mode[i]; });
}

/// L^2 pairing <a, b> = integral of sum_ij a_ij b_ij (Frobenius for tensors).
template <std::size_t C>
double inner_product(const SpectralField<C>& a, const SpectralField<C>& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("inner_product: grid mismatch");
  const std::size_t size = a.grid().size();
  return kBoxVolume * pairwise_sum(0, size, [&](std::size_t m) {
           double s = 0.0;
           for (std::size_t c = 0; c < C; ++c) {
             const Complex x = a.at(c, m);
             const Complex y = b.at(c, m);
             s += SpectralField<C>::weight(c) * (x.real() * y.real() + x.imag() * y.imag());
           }
           return s;
         });
}

/// Integral over the box of a scalar field, (2pi)^3 fhat(0).
inline double integral(const SpectralScalarField& f) { return kBoxVolume * f.at(0, 0).real(); }

/// L^q norm of the pointwise Frobenius magnitude of physical samples, by the
/// uniform-grid rule. q = +inf returns the grid maximum.
template <std::size_t C>
double lq_norm(const PhysicalField<C>& p, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: q must be >= 1");
  const std::size_t size = p.grid.size();
  auto magnitude_sq = [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t c = 0; c < C; ++c) s += SpectralField<C>::weight(c) * p.comps[c][i] * p.comps[c][i];
    return s;
  };
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t i = 0; i < size; ++i) m = std::max(m, magnitude_sq(i));
    return std::sqrt(m);
  }
  const double cell = std::pow(p.grid.spacing(), 3);
  const double sum = pairwise_sum(0, size, [&](std::size_t i) {
    const double m2 = magnitude_sq(i);
    if (q == 2.0) return m2;
    return std::pow(m2, 0.5 * q);
  });
  return std::pow(sum * cell, 1.0 / q);
}

/// L^q norm evaluated on a quadrature grid of `quadrature_n` points per axis
/// (0 keeps the field's own grid).
template <std::size_t C>
double lq_norm(const SpectralField<C>& f, double q, int quadrature_n = 0) {
  if (!(q >= 1.0)) throw std::invalid_argument("lq_norm: q must be >= 1");
  if (quadrature_n == 0 || quadrature_n == f.grid().n()) return lq_norm(to_physical(f), q);
  return lq_norm(to_physical(resample(f, Grid3(quadrature_n))), q);
}

}  // namespace strainlab
