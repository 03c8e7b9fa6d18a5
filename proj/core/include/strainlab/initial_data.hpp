#pragma once

#include <cstdint>

#include "strainlab/field.hpp"

namespace strainlab {

/// u = A (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0).
SpectralVectorField taylor_green_velocity(const Grid3& grid, double amplitude = 1.0);
SpectralStrainField taylor_green_strain(const Grid3& grid, double amplitude = 1.0);

/// Real field from Gaussian white noise, keeping modes with max|k_i| <= band
/// and a zero mean.
SpectralScalarField random_scalar(const Grid3& grid, std::uint64_t seed, int band);

/// Random divergence-free, mean-zero velocity with max|k_i| <= band.
SpectralVectorField random_velocity(const Grid3& grid, std::uint64_t seed, int band);

/// Random strain-space field with max|k_i| <= band scaled to ||S||_{L^2} = l2_norm.
SpectralStrainField random_strain(const Grid3& grid, std::uint64_t seed, int band,
                                  double l2_norm = 1.0);

/// Random symmetric (generally not trace-free) tensor field with max|k_i| <= band.
SymTensorField random_symmetric_tensor(const Grid3& grid, std::uint64_t seed, int band);

/// Blow-up seed recipe: flips the sign of S so that -int det(S) > 0, then
/// scales by `margin` times the amplitude at which
/// -int det(S) = (3/4) ||S||^2_{H1} (margin > 1 makes the inequality strict).
/// Throws std::domain_error when int det(S) vanishes.
SpectralStrainField amplify_blowup_seed(const SpectralStrainField& s, double margin = 2.0);

}  // namespace strainlab
