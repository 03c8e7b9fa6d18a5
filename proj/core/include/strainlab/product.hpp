#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "strainlab/field.hpp"
#include "strainlab/transform.hpp"

namespace strainlab {

enum class ProductMode {
  /// Output on the input grid, modes with max|k_i| > cutoff removed. Exact on
  /// the retained modes (2/3 rule; padded internally when the order needs it).
  kDealiased,
  /// Output on the padded grid 2n carrying the full product band.
  kExact,
};

template <std::size_t Out>
struct ProductResult {
  Grid3 grid;
  std::array<std::vector<Complex>, Out> comps;
};

namespace detail {

/// Chooses the transform grid for a product of `order` inputs of band `band`.
inline int product_grid_size(const Grid3& grid, int band, int order, ProductMode mode) {
  const int n = grid.n();
  if (mode == ProductMode::kExact) {
    if (order * band >= n)
      throw std::invalid_argument("alias_free_product: cutoff too large for padding factor (band " +
                                  std::to_string(band) + ", order " + std::to_string(order) +
                                  ", n " + std::to_string(n) + ")");
    return 2 * n;
  }
  const int needed = order * band + grid.cutoff();
  if (n > needed) return n;
  if (2 * n > needed) return 2 * n;
  throw std::invalid_argument("alias_free_product: cutoff too large for padding factor (band " +
                              std::to_string(band) + ", order " + std::to_string(order) + ")");
}

}  // namespace detail

/// Pointwise nonlinear map of band-limited inputs without aliasing error.
/// `map(const std::array<double, In>&, std::array<double, Out>&)` is applied
/// at every physical grid point; `order` is its polynomial degree (2 or 3).
template <std::size_t In, std::size_t Out, class Map>
ProductResult<Out> alias_free_product(const Grid3& grid,
                                      const std::array<std::span<const Complex>, In>& inputs,
                                      int order, ProductMode mode, Map&& map) {
  int band = 0;
  for (const auto& in : inputs) band = std::max(band, band_limit(grid, in));
  const int m = detail::product_grid_size(grid, band, order, mode);
  const Grid3 work(m);

  std::array<std::vector<double>, In> phys;
  std::vector<Complex> padded(m == grid.n() ? 0 : work.size());
  for (std::size_t c = 0; c < In; ++c) {
    if (m == grid.n()) {
      phys[c] = to_physical(grid, inputs[c]);
    } else {
      resample_component(grid, inputs[c], work, padded);
      phys[c] = to_physical(work, padded);
    }
  }

  std::array<std::vector<double>, Out> out_phys;
  for (auto& o : out_phys) o.resize(work.size());
  std::array<double, In> point_in{};
  std::array<double, Out> point_out{};
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (std::size_t c = 0; c < In; ++c) point_in[c] = phys[c][i];
    map(point_in, point_out);
    for (std::size_t c = 0; c < Out; ++c) out_phys[c][i] = point_out[c];
  }

  if (mode == ProductMode::kExact) {
    ProductResult<Out> result{work, {}};
    for (std::size_t c = 0; c < Out; ++c) result.comps[c] = from_physical(work, out_phys[c]);
    return result;
  }

  ProductResult<Out> result{grid, {}};
  for (std::size_t c = 0; c < Out; ++c) {
    auto spec = from_physical(work, out_phys[c]);
    std::vector<Complex> own(grid.size());
    if (m == grid.n()) {
      own = std::move(spec);
    } else {
      resample_component(work, spec, grid, own);
    }
    for_each_mode(grid, [&](std::size_t idx, const Wavevector& k) {
      if (max_abs_component(k) > grid.cutoff()) own[idx] = Complex{};
    });
    result.comps[c] = std::move(own);
  }
  return result;
}

/// Product of two scalar fields.
SpectralScalarField multiply(const SpectralScalarField& f, const SpectralScalarField& g,
                             ProductMode mode);

/// Product of three scalar fields.
SpectralScalarField multiply(const SpectralScalarField& f, const SpectralScalarField& g,
                             const SpectralScalarField& h, ProductMode mode);

/// Packs a product result into a field on its output grid.
template <std::size_t C>
SpectralField<C> to_field(ProductResult<C>&& r) {
  SpectralField<C> f(r.grid);
  for (std::size_t c = 0; c < C; ++c)
    std::copy(r.comps[c].begin(), r.comps[c].end(), f.component(c).begin());
  return f;
}

}  // namespace strainlab
