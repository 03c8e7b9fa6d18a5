#include "strainlab/product.hpp"

namespace strainlab {

SpectralScalarField multiply(const SpectralScalarField& f, const SpectralScalarField& g,
                             ProductMode mode) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("multiply: grid mismatch");
  std::array<std::span<const Complex>, 2> in{f.component(0), g.component(0)};
  return to_field(alias_free_product<2, 1>(
      f.grid(), in, 2, mode,
      [](const std::array<double, 2>& x, std::array<double, 1>& y) { y[0] = x[0] * x[1]; }));
}

SpectralScalarField multiply(const SpectralScalarField& f, const SpectralScalarField& g,
                             const SpectralScalarField& h, ProductMode mode) {
  if (!(f.grid() == g.grid()) || !(f.grid() == h.grid()))
    throw std::invalid_argument("multiply: grid mismatch");
  std::array<std::span<const Complex>, 3> in{f.component(0), g.component(0), h.component(0)};
  return to_field(alias_free_product<3, 1>(
      f.grid(), in, 3, mode,
      [](const std::array<double, 3>& x, std::array<double, 1>& y) {
        y[0] = x[0] * x[1] * x[2];
      }));
}

}  // namespace strainlab
