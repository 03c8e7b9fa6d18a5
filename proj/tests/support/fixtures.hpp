#pragma once

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "strainlab/field.hpp"
#include "strainlab/norms.hpp"

namespace fixtures {

/// Unit-L^2 strain waves on |k|^2 = 1 and on k = (2, 0, 0).
inline strainlab::SpectralStrainField two_shell(const strainlab::Grid3& g) {
  const auto w1 = oracle::unit_wave({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  const auto w2 = oracle::unit_wave({{2, 0, 0}, {0, 0, 1}, {0, 0, 0}});
  return oracle::strain_from_waves(g, {w1, w2});
}

inline std::vector<oracle::StrainWave> two_shell_waves() {
  return {oracle::unit_wave({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}),
          oracle::unit_wave({{2, 0, 0}, {0, 0, 1}, {0, 0, 0}})};
}

/// Several waves on the shell |k|^2 = 1.
inline std::vector<oracle::StrainWave> unit_shell_waves() {
  return {{{1, 0, 0}, {0, 0.7, -0.2}, {0, 0.1, 0.4}},
          {{0, 1, 0}, {0.3, 0, 0.5}, {-0.6, 0, 0.2}},
          {{0, 0, 1}, {0.4, -0.9, 0}, {0.2, 0.3, 0}}};
}

template <std::size_t C>
double max_abs_diff(const strainlab::SpectralField<C>& a, const strainlab::SpectralField<C>& b) {
  double m = 0.0;
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t i = 0; i < a.grid().size(); ++i) m = std::max(m, std::abs(a.at(c, i) - b.at(c, i)));
  return m;
}

template <std::size_t C>
double max_abs(const strainlab::SpectralField<C>& a) {
  double m = 0.0;
  for (std::size_t c = 0; c < C; ++c)
    for (const auto& z : a.component(c)) m = std::max(m, std::abs(z));
  return m;
}

template <std::size_t C>
double rel_l2_diff(const strainlab::SpectralField<C>& a, const strainlab::SpectralField<C>& b) {
  const double d = std::sqrt(strainlab::sobolev_norm_sq(a - b, 0.0));
  const double s = std::sqrt(strainlab::sobolev_norm_sq(b, 0.0));
  return s == 0.0 ? d : d / s;
}

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace fixtures
