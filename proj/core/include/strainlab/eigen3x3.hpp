#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace strainlab {

/// Eigenvalues of a real symmetric 3x3 matrix given as (11, 12, 13, 22, 23, 33),
/// sorted ascending. Trigonometric closed form on the trace-shifted matrix; the
/// two clustered eigenvalues are then recomputed from the 2x2 block orthogonal
/// to the isolated eigenvector, which keeps double roots accurate.
inline std::array<double, 3> sym_eigenvalues(const double* s) {
  const double a11 = s[0], a12 = s[1], a13 = s[2], a22 = s[3], a23 = s[4], a33 = s[5];
  const double mean = (a11 + a22 + a33) / 3.0;
  const double off = a12 * a12 + a13 * a13 + a23 * a23;
  const double b11 = a11 - mean, b22 = a22 - mean, b33 = a33 - mean;
  const double p2 = (b11 * b11 + b22 * b22 + b33 * b33 + 2.0 * off) / 6.0;
  if (p2 <= 0.0) return {mean, mean, mean};
  const double p = std::sqrt(p2);
  // det(B / p) / 2, clamped against round-off.
  const double det_b = b11 * (b22 * b33 - a23 * a23) - a12 * (a12 * b33 - a23 * a13) +
                       a13 * (a12 * a23 - b22 * a13);
  const double r = std::clamp(det_b / (2.0 * p2 * p), -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double hi = 2.0 * p * std::cos(phi);
  const double lo = 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double mid = -hi - lo;

  // Isolated eigenvalue of B and its eigenvector from rows of B - far I.
  const double far = r < 0.0 ? lo : hi;
  const double rows[3][3] = {{b11 - far, a12, a13}, {a12, b22 - far, a23}, {a13, a23, b33 - far}};
  std::array<double, 3> v{};
  double best = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const std::array<double, 3> c{rows[i][1] * rows[j][2] - rows[i][2] * rows[j][1],
                                    rows[i][2] * rows[j][0] - rows[i][0] * rows[j][2],
                                    rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]};
      const double n2 = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
      if (n2 > best) best = n2, v = c;
    }
  if (!(best > 1e-20 * p2 * p2)) return {mean + lo, mean + mid, mean + hi};
  const double vn = std::sqrt(best);
  for (double& x : v) x /= vn;
  // Orthonormal e1, e2 spanning the complement of v.
  std::array<double, 3> e1 = std::abs(v[0]) < 0.9 ? std::array<double, 3>{0.0, -v[2], v[1]}
                                                   : std::array<double, 3>{-v[2], 0.0, v[0]};
  const double e1n = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (double& x : e1) x /= e1n;
  const std::array<double, 3> e2{v[1] * e1[2] - v[2] * e1[1], v[2] * e1[0] - v[0] * e1[2],
                                 v[0] * e1[1] - v[1] * e1[0]};
  const double bm[3][3] = {{b11, a12, a13}, {a12, b22, a23}, {a13, a23, b33}};
  auto form = [&](const std::array<double, 3>& x, const std::array<double, 3>& y) {
    double t = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t += x[i] * bm[i][j] * y[j];
    return t;
  };
  const double a = form(e1, e1), d = form(e2, e2), b = form(e1, e2);
  const double centre = 0.5 * (a + d), radius = std::hypot(0.5 * (a - d), b);
  std::array<double, 3> ev{mean + far, mean + centre - radius, mean + centre + radius};
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline double sym_determinant(const double* s) {
  return s[0] * (s[3] * s[5] - s[4] * s[4]) - s[1] * (s[1] * s[5] - s[4] * s[2]) +
         s[2] * (s[1] * s[4] - s[3] * s[2]);
}

/// tr(M^3) = sum_ijk M_ij M_jk M_ki for the stored symmetric matrix.
inline double sym_trace_cube(const double* s) {
  const double m[3][3] = {{s[0], s[1], s[2]}, {s[1], s[3], s[4]}, {s[2], s[4], s[5]}};
  double t = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) t += m[i][j] * m[j][k] * m[k][i];
  return t;
}

}  // namespace strainlab
