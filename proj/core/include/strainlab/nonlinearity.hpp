#pragma once

#include <optional>

#include "strainlab/field.hpp"
#include "strainlab/product.hpp"

namespace strainlab {

/// The quadratic terms of the strain equation, unprojected. Fields live on
/// the input grid (dealiased) or on the padded grid (exact).
struct NonlinearTerms {
  SymTensorField s_squared;
  SymTensorField vort_outer;
  std::optional<SymTensorField> advection;  // (u.grad) S
};

NonlinearTerms compute_terms(const SpectralStrainField& s, bool need_advection,
                             ProductMode mode = ProductMode::kDealiased);

/// Coefficients of a linear combination of the three quadratic terms.
struct TermWeights {
  double advection = 0.0;
  double s_squared = 0.0;
  double vort_outer = 0.0;
};

/// P_st(a (u.grad)S + b S^2 + c omega (x) omega), formed in a single
/// physical-space round trip.
SymTensorField projected_combination(const SpectralStrainField& s, const TermWeights& w,
                                     ProductMode mode = ProductMode::kDealiased);

/// N(S) with dS/dt = Lap S - N(S):
/// N(S) = P_st([adv] (u.grad)S + mu S^2 + (3mu/4 - 1/2) omega (x) omega).
/// mu = 1 with advection is the full Navier-Stokes strain equation.
SymTensorField mu_rhs(const SpectralStrainField& s, double mu, bool advection,
                      ProductMode mode = ProductMode::kDealiased);

/// Q = P_st((u.grad)S + S^2 + 3/4 omega (x) omega); <Q, S> = 0.
SymTensorField q_perturbation(const SpectralStrainField& s,
                              ProductMode mode = ProductMode::kExact);

/// Numerator and denominator fields of the blow-up ratio condition. The
/// denominator's linear part is read as -Lap S (tensor reading).
struct BlowupRatioTerms {
  SymTensorField numerator;    // P_st((u.grad)S + S^2/3 + omega(x)omega/4)
  SymTensorField denominator;  // -Lap S + P_st((u.grad)S/2 + 5 S^2/6 + omega(x)omega/8)
};

BlowupRatioTerms blowup_ratio_terms(const SpectralStrainField& s,
                                    ProductMode mode = ProductMode::kExact);

/// Metadata tag for the denominator reading used above.
inline constexpr const char* kBlowupDenominatorReading = "tensor:-Lap(S)";

}  // namespace strainlab
