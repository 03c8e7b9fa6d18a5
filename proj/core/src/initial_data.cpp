#include "strainlab/initial_data.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "strainlab/diagnostics.hpp"
#include "strainlab/norms.hpp"
#include "strainlab/operators.hpp"
#include "strainlab/transform.hpp"

namespace strainlab {

SpectralVectorField taylor_green_velocity(const Grid3& grid, double amplitude) {
  PhysicalField<3> p(grid);
  const int n = grid.n();
  const double h = grid.spacing();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const double x = i * h, y = j * h, z = l * h;
        const std::size_t m = grid.flat(i, j, l);
        p.comps[0][m] = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
        p.comps[1][m] = -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
      }
  // Only the |k_i| = 1 modes are present; drop transform round-off elsewhere.
  return truncate(from_physical(p), 1);
}

SpectralStrainField taylor_green_strain(const Grid3& grid, double amplitude) {
  return sym_grad(taylor_green_velocity(grid, amplitude));
}

SpectralScalarField random_scalar(const Grid3& grid, std::uint64_t seed, int band) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> noise(grid.size());
  for (auto& v : noise) v = normal(rng);
  PhysicalField<1> p(grid);
  p.comps[0] = std::move(noise);
  SpectralScalarField f = truncate(from_physical(p), band);
  f.at(0, 0) = Complex{};
  return f;
}

SpectralVectorField random_velocity(const Grid3& grid, std::uint64_t seed, int band) {
  SpectralVectorField v(grid);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto comp = random_scalar(grid, seed * 3 + c + 1, band);
    std::copy(comp.component(0).begin(), comp.component(0).end(), v.component(c).begin());
  }
  return leray_project(v);
}

SpectralStrainField random_strain(const Grid3& grid, std::uint64_t seed, int band,
                                  double l2_norm) {
  SpectralStrainField s = sym_grad(random_velocity(grid, seed, band));
  const double norm = std::sqrt(sobolev_norm_sq(s, 0.0));
  if (norm > 0.0) s *= l2_norm / norm;
  return s;
}

SymTensorField random_symmetric_tensor(const Grid3& grid, std::uint64_t seed, int band) {
  SymTensorField t(grid);
  for (std::size_t c = 0; c < 6; ++c) {
    const auto comp = random_scalar(grid, seed * 7 + c + 11, band);
    std::copy(comp.component(0).begin(), comp.component(0).end(), t.component(c).begin());
  }
  return t;
}

SpectralStrainField amplify_blowup_seed(const SpectralStrainField& s, double margin) {
  if (!(margin > 1.0)) throw std::invalid_argument("amplify_blowup_seed: margin must exceed 1");
  SpectralStrainField out = s;
  double det = det_integral(out);
  if (det == 0.0) throw std::domain_error("amplify_blowup_seed: int det(S) vanishes");
  if (det > 0.0) {
    out *= -1.0;
    det = -det;
  }
  const double h1 = sobolev_norm_sq(out, 1.0);
  const double threshold = 0.75 * h1 / (-det);
  out *= margin * threshold;
  return out;
}

}  // namespace strainlab
