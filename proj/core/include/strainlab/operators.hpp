#pragma once

#include <cmath>
#include <stdexcept>

#include "strainlab/field.hpp"

namespace strainlab {

/// Diagonal Fourier multipliers acting componentwise.
struct OperatorSymbol {
  enum class Kind { kLaplacian, kInverseLaplacian, kHeat };

  Kind kind = Kind::kLaplacian;
  double t = 0.0;  // heat only

  static OperatorSymbol laplacian() { return {Kind::kLaplacian, 0.0}; }
  static OperatorSymbol inverse_laplacian() { return {Kind::kInverseLaplacian, 0.0}; }
  static OperatorSymbol heat(double time) {
    if (!(time >= 0.0)) throw std::invalid_argument("heat semigroup needs t >= 0");
    return {Kind::kHeat, time};
  }

  /// Multiplier at |k|^2 = k2.
  double multiplier(double k2) const {
    switch (kind) {
      case Kind::kLaplacian: return -k2;
      case Kind::kInverseLaplacian: return k2 == 0.0 ? 0.0 : -1.0 / k2;
      case Kind::kHeat: return std::exp(-t * k2);
    }
    return 0.0;
  }
};

template <std::size_t C>
SpectralField<C> apply(const OperatorSymbol& op, SpectralField<C> f) {
  if (op.kind == OperatorSymbol::Kind::kInverseLaplacian) {
    for (std::size_t c = 0; c < C; ++c)
      if (f.at(c, 0) != Complex{})
        throw std::invalid_argument("inverse Laplacian needs a zero mean mode");
  }
  for_each_mode(f.grid(), [&](std::size_t m, const Wavevector& k) {
    const double mult = op.multiplier(norm_sq(k));
    for (std::size_t c = 0; c < C; ++c) f.at(c, m) *= mult;
  });
  return f;
}

template <std::size_t C>
SpectralField<C> laplacian(SpectralField<C> f) {
  return apply(OperatorSymbol::laplacian(), std::move(f));
}
template <std::size_t C>
SpectralField<C> inv_laplacian(SpectralField<C> f) {
  return apply(OperatorSymbol::inverse_laplacian(), std::move(f));
}
template <std::size_t C>
SpectralField<C> heat_semigroup(SpectralField<C> f, double t) {
  return apply(OperatorSymbol::heat(t), std::move(f));
}

SpectralVectorField gradient(const SpectralScalarField& phi);
SpectralScalarField divergence(const SpectralVectorField& v);

/// S_ij = (d_i u_j + d_j u_i) / 2.
SymTensorField sym_grad(const SpectralVectorField& u);
/// omega = curl u.
SpectralVectorField curl(const SpectralVectorField& u);
/// Divergence of a symmetric tensor, (div M)_i = d_j M_ij.
SpectralVectorField tensor_divergence(const SymTensorField& m);

/// Orthogonal projection onto divergence-free vector fields; the mean mode is kept.
SpectralVectorField leray_project(const SpectralVectorField& v);

/// Orthogonal projection of a symmetric tensor field onto the strain space.
/// Per mode: u = (2/|k|^2) (I - kk^T/|k|^2)(-i M k), then (i/2)(k u^T + u k^T).
SymTensorField strain_project(const SymTensorField& m);

/// || M + 2 sym_grad div (-Lap)^{-1} M || / ||M|| (0 for the zero field).
double constraint_residual(const SymTensorField& m);

/// u = -2 div (-Lap)^{-1} S. Throws std::domain_error if the constraint
/// residual of S exceeds `tolerance`.
SpectralVectorField velocity_from_strain(const SpectralStrainField& s, double tolerance = 1e-8);

/// Biot-Savart reconstruction followed by sym_grad. Throws std::domain_error if
/// w is not divergence free to `tolerance` (relative).
SpectralStrainField strain_from_vorticity(const SpectralVectorField& w, double tolerance = 1e-8);

/// curl(velocity_from_strain(S)).
SpectralVectorField vorticity_from_strain(const SpectralStrainField& s, double tolerance = 1e-8);

/// sqrt(sum |k . vhat|^2 / sum |k|^2 |vhat|^2), 0 for the zero field.
double divergence_defect(const SpectralVectorField& v);

/// max_k |trace(Mhat(k))| relative to max_k ||Mhat(k)||.
double trace_defect(const SymTensorField& m);

}  // namespace strainlab
