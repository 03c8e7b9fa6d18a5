#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "strainlab/field.hpp"
#include "strainlab/product.hpp"

namespace strainlab {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- cubic integrals -------------------------------------------------------

/// Integral of det(S), evaluated on a grid fine enough that the cubic
/// integrand is integrated exactly.
double det_integral(const SymTensorField& s);

/// Integral of tr(S^3), computed from the entrywise triple sum.
double trace_cube_integral(const SymTensorField& s);

/// <S, omega (x) omega> as a pointwise cubic integral.
double strain_vorticity_pairing(const SymTensorField& s, const SpectralVectorField& omega);

// ---- identities ------------------------------------------------------------

struct IdentityResiduals {
  /// <-Lap S, omega (x) omega> / (||Lap S|| ||omega (x) omega||).
  double ortho = 0.0;
  /// Pairwise deviations of <S, w(x)w>, -4 int det S, -(4/3) int tr S^3,
  /// normalized by ||S|| ||w(x)w||.
  std::array<double, 2> cubic{};
  /// <(u.grad)S, S> / (||(u.grad)S|| ||S||).
  double advection_pairing = 0.0;
  /// <S^2 + 3/4 w(x)w, S> / (||S^2 + 3/4 w(x)w|| ||S||).
  double combination_pairing = 0.0;
  /// <Q, S> / (||Q|| ||S||).
  double q_pairing = 0.0;
};

/// Evaluates the residuals with exact (padded) products. The velocity and
/// vorticity are reconstructed without checking the strain constraint, so a
/// tensor outside the strain space produces large residuals instead of an error.
IdentityResiduals identity_suite(const SymTensorField& s);

// ---- enstrophy rate --------------------------------------------------------

struct EnstrophyRate {
  double measured = 0.0;   // 2 <Lap S - N(S), S>
  double identity = 0.0;   // -2 ||S||^2_{H1} - 4 int det S
  double vorticity = 0.0;  // -||omega||^2_{H1} + <S, omega (x) omega>
};

EnstrophyRate enstrophy_rate(const SpectralStrainField& s, double mu, bool advection);

// ---- infima over rho of ||-rho Lap S - S|| -------------------------------

struct Infimum {
  double value = 0.0;  // squared norm for the Hilbert cases, plain norm for L^q
  double rho = 0.0;
  double p = 0.0;      // time exponent with 2/p + 3/q = 2 (L^q case only)
};

/// Closed form of inf_rho ||-rho Lap S - S||^2_{L^2}.
Infimum inf_rho_l2(const SpectralStrainField& s);

/// Closed form of inf_rho ||-rho Lap S - S||^2_{H^alpha}, 0 <= alpha < 3/2.
Infimum inf_rho_halpha(const SpectralStrainField& s, double alpha);

/// inf_rho ||-rho Lap S - S||_{L^q} by golden-section search on [0, 2 rho_0]
/// with rho_0 the L^2 minimizer. `quadrature_n` = 0 uses the field grid.
Infimum inf_rho_lq(const SpectralStrainField& s, double q, int quadrature_n = 0);

/// p with 2/p + 3/q = 2 (+inf at q = 3/2).
double time_exponent_for(double q);

// ---- criteria --------------------------------------------------------------

struct RegularityIntegrands {
  std::vector<double> alphas;
  std::vector<double> q_h_alpha;         // ||Q||_{H^alpha}
  std::vector<double> q_integrand;       // ||Q||^p_{H^alpha} / ||S||^p_{H^1}, p = 2/(1+alpha)
  double endpoint_ratio = 0.0;           // ||Q||_{L^2} / ||Lap S||_{L^2}
  std::vector<double> qs;
  std::vector<double> inf_rho_lq;        // inf_rho ||-rho Lap S - S||_{L^q}
  std::vector<double> inf_rho_lq_integrand;  // value^p
  std::vector<double> lambda2p_lq;       // ||lambda_2^+||_{L^q}
  std::vector<double> lambda2p_integrand;    // ||lambda_2^+||^p_{L^q}
};

RegularityIntegrands regularity_integrands(const SpectralStrainField& s,
                                           const std::vector<double>& alphas,
                                           const std::vector<double>& qs);

/// Pointwise sorted eigenvalues of S on its grid (three physical fields).
PhysicalField<3> strain_eigenvalues(const SymTensorField& s);

/// Blow-up ratio ||numerator|| / ||denominator||, denominator read as a tensor.
double blowup_ratio(const SpectralStrainField& s);

/// Fraction of ||S||^2 carried by modes with max|k_i| > (2/3) cutoff.
double spectral_tail_fraction(const SpectralStrainField& s);

inline constexpr double kResolutionTailLimit = 1e-6;

// ---- sampled record --------------------------------------------------------

enum class DiagnosticsLevel { kBasic, kFull };

struct DiagnosticsConfig {
  double mu = 1.0;
  bool advection = false;
  DiagnosticsLevel level = DiagnosticsLevel::kFull;
  std::vector<double> alphas{0.0, 1.0};
  std::vector<double> qs{2.0, 3.0, kInf};
};

struct DiagnosticsRecord {
  double t = 0.0;
  long step = 0;
  double enstrophy = 0.0;  // ||S||^2_{L^2}
  double h1_sq = 0.0;
  double h2_sq = 0.0;      // ||Lap S||^2_{L^2}
  double det_int = 0.0;
  double constraint_resid = 0.0;
  double rate_measured = 0.0;
  double rate_identity = 0.0;
  double rate_vorticity = 0.0;
  double tail_fraction = 0.0;
  bool resolution_ok = true;
  // Full level only (NaN otherwise).
  double ortho_resid = kNaN;
  std::array<double, 2> cubic_resids{kNaN, kNaN};
  std::vector<double> q_h_alpha;
  std::vector<double> q_integrand;
  double endpoint_ratio = kNaN;
  double inf_rho_l2 = kNaN;
  std::vector<double> inf_rho_halpha;
  std::vector<double> inf_rho_lq;
  std::vector<double> inf_rho_lq_integrand;
  std::vector<double> lambda2p_lq;
  std::vector<double> lambda2p_integrand;
  double blowup_ratio = kNaN;
};

DiagnosticsRecord compute_record(const SpectralStrainField& s, double t, long step,
                                 const DiagnosticsConfig& cfg);

/// CSV column names of a record for the configured alpha and q lists.
std::vector<std::string> record_columns(const DiagnosticsConfig& cfg);
/// Record values in the order of record_columns.
std::vector<double> record_values(const DiagnosticsRecord& r, const DiagnosticsConfig& cfg);

// ---- constants and blow-up bookkeeping ---------------------------------------

struct NamedConstant {
  std::string name;
  double value;
  std::string description;
};

/// Sharp R^3 Sobolev constant C_s for 0 < s < 3/2.
double sobolev_constant(double s);
/// C_mu = 1 / (8^5 (2|mu| + |3 mu - 2|)^4).
double existence_constant(double mu);

std::vector<NamedConstant> reference_constants();

struct BlowupReport {
  double f0 = 0.0;  // -3 ||S0||^2_{H1} - 4 int det S0
  double e0 = 0.0;  // (1/2) ||grad u0||^2 = ||S0||^2
  double k0 = 0.0;  // (1/2) ||u0||^2
  std::optional<double> t_star;
  bool seed_condition = false;  // -int det S0 > (3/4) ||S0||^2_{H1}
  std::optional<double> first_ratio_violation_t;
  double max_ratio = 0.0;
  std::string denominator_reading;
};

/// T* = (-E0 + sqrt(E0^2 + f0 K0)) / f0, empty when f0 <= 0.
std::optional<double> blowup_time_bound(double f0, double e0, double k0);

BlowupReport blowup_report(const SpectralStrainField& s0,
                           const std::vector<DiagnosticsRecord>& series);

}  // namespace strainlab
