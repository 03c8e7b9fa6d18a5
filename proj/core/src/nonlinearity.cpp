#include "strainlab/nonlinearity.hpp"

#include "strainlab/operators.hpp"
#include "strainlab/transform.hpp"

namespace strainlab {
namespace {

constexpr Complex kI{0.0, 1.0};

// Input layout of the physical-space pass: S (6), omega (3), then for
// advection u (3) and d_j S_c at slot 12 + 3c + j.
constexpr std::size_t kBasicInputs = 9;
constexpr std::size_t kAdvectionInputs = 30;

struct Reconstruction {
  SpectralVectorField u;
  SpectralVectorField omega;
  std::vector<std::vector<Complex>> grad_s;  // 18 components when requested
};

Reconstruction reconstruct(const SpectralStrainField& s, bool need_advection) {
  SpectralVectorField u = velocity_from_strain(s);
  SpectralVectorField omega = curl(u);
  std::vector<std::vector<Complex>> grad;
  if (need_advection) {
    grad.assign(18, std::vector<Complex>(s.grid().size()));
    for_each_derivative_mode(s.grid(), [&](std::size_t m, const Wavevector& k) {
      for (std::size_t c = 0; c < 6; ++c)
        for (std::size_t j = 0; j < 3; ++j)
          grad[3 * c + j][m] = kI * static_cast<double>(k[j]) * s.at(c, m);
    });
  }
  return {std::move(u), std::move(omega), std::move(grad)};
}

inline void s_squared_at(const double* s, double* out) {
  // Entries of the symmetric matrix from the 6 stored values.
  const double a11 = s[0], a12 = s[1], a13 = s[2], a22 = s[3], a23 = s[4], a33 = s[5];
  out[0] = a11 * a11 + a12 * a12 + a13 * a13;
  out[1] = a11 * a12 + a12 * a22 + a13 * a23;
  out[2] = a11 * a13 + a12 * a23 + a13 * a33;
  out[3] = a12 * a12 + a22 * a22 + a23 * a23;
  out[4] = a12 * a13 + a22 * a23 + a23 * a33;
  out[5] = a13 * a13 + a23 * a23 + a33 * a33;
}

inline void outer_at(const double* w, double* out) {
  out[0] = w[0] * w[0];
  out[1] = w[0] * w[1];
  out[2] = w[0] * w[2];
  out[3] = w[1] * w[1];
  out[4] = w[1] * w[2];
  out[5] = w[2] * w[2];
}

inline void advection_at(const double* x, double* out) {
  const double* u = x + 9;
  const double* grad = x + 12;
  for (std::size_t c = 0; c < 6; ++c)
    out[c] = u[0] * grad[3 * c] + u[1] * grad[3 * c + 1] + u[2] * grad[3 * c + 2];
}

template <std::size_t In>
std::array<std::span<const Complex>, In> gather(const SpectralStrainField& s,
                                                 const Reconstruction& r) {
  std::array<std::span<const Complex>, In> in{};
  for (std::size_t c = 0; c < 6; ++c) in[c] = s.component(c);
  for (std::size_t c = 0; c < 3; ++c) in[6 + c] = r.omega.component(c);
  if constexpr (In == kAdvectionInputs) {
    for (std::size_t c = 0; c < 3; ++c) in[9 + c] = r.u.component(c);
    for (std::size_t c = 0; c < 18; ++c) in[12 + c] = r.grad_s[c];
  }
  return in;
}

template <std::size_t Out>
SymTensorField slice(const ProductResult<Out>& r, std::size_t offset) {
  SymTensorField f(r.grid);
  for (std::size_t c = 0; c < 6; ++c)
    std::copy(r.comps[offset + c].begin(), r.comps[offset + c].end(), f.component(c).begin());
  return f;
}

}  // namespace

NonlinearTerms compute_terms(const SpectralStrainField& s, bool need_advection,
                             ProductMode mode) {
  const Reconstruction rec = reconstruct(s, need_advection);
  if (!need_advection) {
    auto r = alias_free_product<kBasicInputs, 12>(
        s.grid(), gather<kBasicInputs>(s, rec), 2, mode,
        [](const std::array<double, kBasicInputs>& x, std::array<double, 12>& y) {
          s_squared_at(x.data(), y.data());
          outer_at(x.data() + 6, y.data() + 6);
        });
    return {slice(r, 0), slice(r, 6), std::nullopt};
  }
  auto r = alias_free_product<kAdvectionInputs, 18>(
      s.grid(), gather<kAdvectionInputs>(s, rec), 2, mode,
      [](const std::array<double, kAdvectionInputs>& x, std::array<double, 18>& y) {
        s_squared_at(x.data(), y.data());
        outer_at(x.data() + 6, y.data() + 6);
        advection_at(x.data(), y.data() + 12);
      });
  return {slice(r, 0), slice(r, 6), slice(r, 12)};
}

SymTensorField projected_combination(const SpectralStrainField& s, const TermWeights& w,
                                     ProductMode mode) {
  const bool need_advection = w.advection != 0.0;
  const Reconstruction rec = reconstruct(s, need_advection);
  if (!need_advection) {
    auto r = alias_free_product<kBasicInputs, 6>(
        s.grid(), gather<kBasicInputs>(s, rec), 2, mode,
        [w](const std::array<double, kBasicInputs>& x, std::array<double, 6>& y) {
          double sq[6], ww[6];
          s_squared_at(x.data(), sq);
          outer_at(x.data() + 6, ww);
          for (std::size_t c = 0; c < 6; ++c) y[c] = w.s_squared * sq[c] + w.vort_outer * ww[c];
        });
    return strain_project(slice(r, 0));
  }
  auto r = alias_free_product<kAdvectionInputs, 6>(
      s.grid(), gather<kAdvectionInputs>(s, rec), 2, mode,
      [w](const std::array<double, kAdvectionInputs>& x, std::array<double, 6>& y) {
        double sq[6], ww[6], adv[6];
        s_squared_at(x.data(), sq);
        outer_at(x.data() + 6, ww);
        advection_at(x.data(), adv);
        for (std::size_t c = 0; c < 6; ++c)
          y[c] = w.advection * adv[c] + w.s_squared * sq[c] + w.vort_outer * ww[c];
      });
  return strain_project(slice(r, 0));
}

SymTensorField mu_rhs(const SpectralStrainField& s, double mu, bool advection, ProductMode mode) {
  return projected_combination(s, {advection ? 1.0 : 0.0, mu, 0.75 * mu - 0.5}, mode);
}

SymTensorField q_perturbation(const SpectralStrainField& s, ProductMode mode) {
  return projected_combination(s, {1.0, 1.0, 0.75}, mode);
}

BlowupRatioTerms blowup_ratio_terms(const SpectralStrainField& s, ProductMode mode) {
  SymTensorField numerator = projected_combination(s, {1.0, 1.0 / 3.0, 0.25}, mode);
  SymTensorField denominator = projected_combination(s, {0.5, 5.0 / 6.0, 0.125}, mode);
  const SymTensorField s_on_grid =
      denominator.grid() == s.grid() ? s : resample(s, denominator.grid());
  denominator -= laplacian(s_on_grid);
  return {std::move(numerator), std::move(denominator)};
}

}  // namespace strainlab
