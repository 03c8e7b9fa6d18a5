#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the transforms or projections under test.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "strainlab/field.hpp"
#include "strainlab/grid.hpp"

namespace oracle {

using strainlab::Complex;
using strainlab::Grid3;
using strainlab::Wavevector;

/// Direct evaluation of the Fourier series of component c at x.
template <std::size_t C>
double eval_at(const strainlab::SpectralField<C>& f, std::size_t c, const std::array<double, 3>& x) {
  Complex sum{};
  strainlab::for_each_mode(f.grid(), [&](std::size_t m, const Wavevector& k) {
    const Complex z = f.at(c, m);
    if (z == Complex{}) return;
    const double phase = k[0] * x[0] + k[1] * x[1] + k[2] * x[2];
    sum += z * Complex(std::cos(phase), std::sin(phase));
  });
  return sum.real();
}

/// Strain of u(x) = a cos(k.x) + b sin(k.x) with a, b orthogonal to k:
/// S_ij = -(k_i a_j + k_j a_i)/2 sin(k.x) + (k_i b_j + k_j b_i)/2 cos(k.x).
struct StrainWave {
  Wavevector k;
  std::array<double, 3> a;
  std::array<double, 3> b;
};

inline std::array<double, 6> wave_strain_at(const StrainWave& w, const std::array<double, 3>& x) {
  const double phase = w.k[0] * x[0] + w.k[1] * x[1] + w.k[2] * x[2];
  const double s = std::sin(phase), c = std::cos(phase);
  std::array<double, 6> out{};
  const int idx[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  for (int q = 0; q < 6; ++q) {
    const int i = idx[q][0], j = idx[q][1];
    out[q] = -0.5 * (w.k[i] * w.a[j] + w.k[j] * w.a[i]) * s + 0.5 * (w.k[i] * w.b[j] + w.k[j] * w.b[i]) * c;
  }
  return out;
}

/// Velocity, vorticity and strain gradient of a wave at x.
struct WavePoint {
  std::array<double, 3> u{};
  std::array<double, 3> omega{};
  std::array<double, 6> s{};
  std::array<std::array<double, 3>, 6> ds{};  // ds[q][j] = d_j S_q
};

inline void accumulate_wave(const StrainWave& w, const std::array<double, 3>& x, WavePoint& p) {
  const double phase = w.k[0] * x[0] + w.k[1] * x[1] + w.k[2] * x[2];
  const double s = std::sin(phase), c = std::cos(phase);
  const std::array<double, 3> k{double(w.k[0]), double(w.k[1]), double(w.k[2])};
  auto cross = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return std::array<double, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                 a[0] * b[1] - a[1] * b[0]};
  };
  const auto ka = cross(k, w.a), kb = cross(k, w.b);
  for (int i = 0; i < 3; ++i) {
    p.u[i] += w.a[i] * c + w.b[i] * s;
    p.omega[i] += -s * ka[i] + c * kb[i];
  }
  const int idx[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  for (int q = 0; q < 6; ++q) {
    const int i = idx[q][0], j = idx[q][1];
    const double A = 0.5 * (k[i] * w.a[j] + k[j] * w.a[i]);
    const double B = 0.5 * (k[i] * w.b[j] + k[j] * w.b[i]);
    p.s[q] += -A * s + B * c;
    for (int d = 0; d < 3; ++d) p.ds[q][d] += (-A * c - B * s) * k[d];
  }
}

inline WavePoint waves_at(const std::vector<StrainWave>& waves, const std::array<double, 3>& x) {
  WavePoint p;
  for (const auto& w : waves) accumulate_wave(w, x, p);
  return p;
}

/// Full 3x3 matrix from the six stored components.
inline std::array<std::array<double, 3>, 3> full(const std::array<double, 6>& s) {
  return {{{s[0], s[1], s[2]}, {s[1], s[3], s[4]}, {s[2], s[4], s[5]}}};
}

/// Builds the spectral coefficients of a sum of strain waves by hand.
inline strainlab::SpectralStrainField strain_from_waves(const Grid3& g,
                                                        const std::vector<StrainWave>& waves) {
  strainlab::SpectralStrainField s(g);
  const int idx[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  for (const auto& w : waves) {
    const std::size_t plus = g.flat(g.index_of(w.k[0]), g.index_of(w.k[1]), g.index_of(w.k[2]));
    const std::size_t minus = g.flat(g.index_of(-w.k[0]), g.index_of(-w.k[1]), g.index_of(-w.k[2]));
    for (int q = 0; q < 6; ++q) {
      const int i = idx[q][0], j = idx[q][1];
      const double ka = 0.5 * (w.k[i] * w.a[j] + w.k[j] * w.a[i]);
      const double kb = 0.5 * (w.k[i] * w.b[j] + w.k[j] * w.b[i]);
      // -ka sin + kb cos = Re[(kb + i ka) e^{i k.x}]
      const Complex c(0.5 * kb, 0.5 * ka);
      s.at(q, plus) += c;
      s.at(q, minus) += std::conj(c);
    }
  }
  return s;
}

/// Weighted squared L^2 norm of a sum of waves computed analytically:
/// each wave contributes (2pi)^3 |k|^2 (|a|^2 + |b|^2) / 4 when a, b are
/// orthogonal to k and the wavevectors are distinct up to sign.
inline double wave_l2_sq(const StrainWave& w) {
  const double k2 = double(w.k[0]) * w.k[0] + double(w.k[1]) * w.k[1] + double(w.k[2]) * w.k[2];
  double aa = 0, bb = 0;
  for (int i = 0; i < 3; ++i) aa += w.a[i] * w.a[i], bb += w.b[i] * w.b[i];
  return strainlab::kBoxVolume * k2 * (aa + bb) / 4.0;
}

/// Scales a wave so that its L^2 norm is one.
inline StrainWave unit_wave(StrainWave w) {
  const double s = 1.0 / std::sqrt(wave_l2_sq(w));
  for (int i = 0; i < 3; ++i) w.a[i] *= s, w.b[i] *= s;
  return w;
}

/// Per-mode orthogonal projection onto span{(i/2)(k v^T + v k^T) : v orthogonal to k}
/// computed by Gram-Schmidt least squares in the weighted Frobenius product.
inline std::array<Complex, 6> project_mode(const std::array<Complex, 6>& m, const Wavevector& kv) {
  std::array<Complex, 6> out{};
  const std::array<double, 3> k{double(kv[0]), double(kv[1]), double(kv[2])};
  const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  if (k2 == 0.0) return out;
  // Two real vectors spanning k-perp.
  std::array<double, 3> e{1, 0, 0};
  if (std::abs(k[0]) > std::abs(k[1]) && std::abs(k[0]) > std::abs(k[2])) e = {0, 1, 0};
  auto cross = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return std::array<double, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                 a[0] * b[1] - a[1] * b[0]};
  };
  const auto v1 = cross(k, e);
  const auto v2 = cross(k, v1);
  const double w[6] = {1, 2, 2, 1, 2, 1};
  const int idx[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  auto basis = [&](const std::array<double, 3>& v) {
    std::array<Complex, 6> b;
    for (int q = 0; q < 6; ++q) {
      const int i = idx[q][0], j = idx[q][1];
      b[q] = Complex(0.0, 0.5 * (k[i] * v[j] + v[i] * k[j]));
    }
    return b;
  };
  auto dot = [&](const std::array<Complex, 6>& x, const std::array<Complex, 6>& y) {
    Complex s{};
    for (int q = 0; q < 6; ++q) s += w[q] * std::conj(x[q]) * y[q];
    return s;
  };
  std::array<Complex, 6> b1 = basis(v1), b2 = basis(v2);
  const Complex r12 = dot(b1, b2) / dot(b1, b1);
  for (int q = 0; q < 6; ++q) b2[q] -= r12 * b1[q];
  for (const auto* b : {&b1, &b2}) {
    const Complex coef = dot(*b, m) / dot(*b, *b);
    for (int q = 0; q < 6; ++q) out[q] += coef * (*b)[q];
  }
  return out;
}

/// Minimum of f on [lo, hi] by a uniform scan with the given step.
inline std::pair<double, double> scan_min(const std::function<double(double)>& f, double lo,
                                          double hi, double step) {
  double best_x = lo, best = f(lo);
  const long count = static_cast<long>(std::llround((hi - lo) / step));
  for (long i = 1; i <= count; ++i) {
    const double x = lo + i * step;
    const double v = f(x);
    if (v < best) best = v, best_x = x;
  }
  return {best_x, best};
}

/// Coarse scan followed by a fine scan around the coarse minimizer.
inline std::pair<double, double> refined_scan_min(const std::function<double(double)>& f, double lo,
                                                  double hi, double coarse, double fine) {
  const auto [x0, v0] = scan_min(f, lo, hi, coarse);
  (void)v0;
  return scan_min(f, std::max(lo, x0 - coarse), std::min(hi, x0 + coarse), fine);
}

}  // namespace oracle
