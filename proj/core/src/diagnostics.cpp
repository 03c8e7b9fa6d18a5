#include "strainlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "strainlab/eigen3x3.hpp"
#include "strainlab/nonlinearity.hpp"
#include "strainlab/norms.hpp"
#include "strainlab/operators.hpp"
#include "strainlab/reduce.hpp"
#include "strainlab/transform.hpp"

namespace strainlab {
namespace {

constexpr double kPi = std::numbers::pi;

// Integral over the box of a cubic pointwise expression of band-limited
// inputs. The transform grid is chosen so no triple of modes aliases onto
// the mean, which makes the uniform-grid sum exact.
template <std::size_t In, class Fn>
double cubic_integral(const Grid3& grid, const std::array<std::span<const Complex>, In>& inputs,
                      Fn&& integrand) {
  int band = 0;
  for (const auto& in : inputs) band = std::max(band, band_limit(grid, in));
  const int m = grid.n() > 3 * band ? grid.n() : 2 * grid.n();
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
  const double sum = pairwise_sum(0, work.size(), [&](std::size_t i) {
    std::array<double, In> x;
    for (std::size_t c = 0; c < In; ++c) x[c] = phys[c][i];
    return integrand(x);
  });
  return sum * std::pow(work.spacing(), 3);
}

std::array<std::span<const Complex>, 6> spans_of(const SymTensorField& s) {
  std::array<std::span<const Complex>, 6> in;
  for (std::size_t c = 0; c < 6; ++c) in[c] = s.component(c);
  return in;
}

double l2(const SymTensorField& f) { return std::sqrt(sobolev_norm_sq(f, 0.0)); }

double normalized(double value, double scale) { return scale == 0.0 ? 0.0 : std::abs(value) / scale; }

template <std::size_t C>
SpectralField<C> on_grid(const SpectralField<C>& f, const Grid3& g) {
  return f.grid() == g ? f : resample(f, g);
}

// Products whose pairing with S itself is exact: the dealiased product keeps
// every mode of S exactly when the transform grid has room for the band.
ProductMode pairing_mode(const SpectralStrainField& s) {
  const int band = band_limit(s);
  const Grid3& g = s.grid();
  return (band <= g.cutoff() && g.n() > 2 * band + g.cutoff()) ? ProductMode::kDealiased
                                                                : ProductMode::kExact;
}

SymTensorField vort_outer_exact(const SpectralVectorField& omega) {
  std::array<std::span<const Complex>, 3> in{omega.component(0), omega.component(1),
                                             omega.component(2)};
  return to_field(alias_free_product<3, 6>(
      omega.grid(), in, 2, ProductMode::kExact,
      [](const std::array<double, 3>& w, std::array<double, 6>& y) {
        y[0] = w[0] * w[0];
        y[1] = w[0] * w[1];
        y[2] = w[0] * w[2];
        y[3] = w[1] * w[1];
        y[4] = w[1] * w[2];
        y[5] = w[2] * w[2];
      }));
}

std::string label(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

double det_integral(const SymTensorField& s) {
  return cubic_integral(s.grid(), spans_of(s),
                        [](const std::array<double, 6>& x) { return sym_determinant(x.data()); });
}

double trace_cube_integral(const SymTensorField& s) {
  return cubic_integral(s.grid(), spans_of(s),
                        [](const std::array<double, 6>& x) { return sym_trace_cube(x.data()); });
}

double strain_vorticity_pairing(const SymTensorField& s, const SpectralVectorField& omega) {
  if (!(s.grid() == omega.grid())) throw std::invalid_argument("pairing: grid mismatch");
  std::array<std::span<const Complex>, 9> in;
  for (std::size_t c = 0; c < 6; ++c) in[c] = s.component(c);
  for (std::size_t c = 0; c < 3; ++c) in[6 + c] = omega.component(c);
  return cubic_integral(s.grid(), in, [](const std::array<double, 9>& x) {
    const double* w = x.data() + 6;
    return x[0] * w[0] * w[0] + x[3] * w[1] * w[1] + x[5] * w[2] * w[2] +
           2.0 * (x[1] * w[0] * w[1] + x[2] * w[0] * w[2] + x[4] * w[1] * w[2]);
  });
}

IdentityResiduals identity_suite(const SymTensorField& s) {
  IdentityResiduals out;
  if (sobolev_norm_sq(s, 0.0) == 0.0) return out;

  const SpectralVectorField omega = vorticity_from_strain(s, kInf);
  const SymTensorField ww = vort_outer_exact(omega);
  const Grid3& fine = ww.grid();
  const SymTensorField s_fine = resample(s, fine);
  const SymTensorField lap_fine = laplacian(s_fine);

  out.ortho = normalized(inner_product(lap_fine, ww), l2(lap_fine) * l2(ww));

  const double a = inner_product(s_fine, ww);
  const double b = -4.0 * det_integral(s);
  const double c = -4.0 / 3.0 * trace_cube_integral(s);
  const double scale = l2(s) * l2(ww);
  out.cubic = {normalized(a - b, scale), normalized(b - c, scale)};

  if (constraint_residual(s) > 1e-8) {
    out.advection_pairing = out.combination_pairing = out.q_pairing = kNaN;
    return out;
  }
  const NonlinearTerms terms = compute_terms(s, true, ProductMode::kExact);
  const SymTensorField& adv = *terms.advection;
  out.advection_pairing = normalized(inner_product(adv, s_fine), l2(adv) * l2(s_fine));
  SymTensorField combo = terms.s_squared;
  combo.axpy(0.75, terms.vort_outer);
  out.combination_pairing = normalized(inner_product(combo, s_fine), l2(combo) * l2(s_fine));
  combo += adv;
  const SymTensorField q = strain_project(combo);
  out.q_pairing = normalized(inner_product(q, s_fine), l2(q) * l2(s_fine));
  return out;
}

EnstrophyRate enstrophy_rate(const SpectralStrainField& s, double mu, bool advection) {
  EnstrophyRate r;
  if (sobolev_norm_sq(s, 0.0) == 0.0) return r;
  const SymTensorField n = mu_rhs(s, mu, advection, pairing_mode(s));
  const SymTensorField s_on = on_grid(s, n.grid());
  SymTensorField lin = laplacian(s_on);
  lin -= n;
  r.measured = 2.0 * inner_product(lin, s_on);
  r.identity = -2.0 * sobolev_norm_sq(s, 1.0) - 4.0 * det_integral(s);
  const SpectralVectorField omega = vorticity_from_strain(s);
  r.vorticity = -sobolev_norm_sq(omega, 1.0) + strain_vorticity_pairing(s, omega);
  return r;
}

Infimum inf_rho_l2(const SpectralStrainField& s) { return inf_rho_halpha(s, 0.0); }

Infimum inf_rho_halpha(const SpectralStrainField& s, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.5))
    throw std::invalid_argument("inf_rho_halpha: alpha must lie in [0, 3/2)");
  const double a = sobolev_norm_sq(s, alpha);
  if (a == 0.0) throw std::invalid_argument("inf_rho: zero field");
  const double b = sobolev_norm_sq(s, 1.0 + alpha);
  const double c = sobolev_norm_sq(s, 2.0 + alpha);
  Infimum inf;
  inf.rho = b / c;
  inf.value = (1.0 - b * b / (a * c)) * a;
  return inf;
}

double time_exponent_for(double q) {
  if (std::isinf(q)) return 1.0;
  const double denom = 2.0 - 3.0 / q;
  if (denom == 0.0) return kInf;
  return 2.0 / denom;
}

Infimum inf_rho_lq(const SpectralStrainField& s, double q, int quadrature_n) {
  if (!(q >= 1.0)) throw std::invalid_argument("inf_rho_lq: q must be >= 1");
  const double h1 = sobolev_norm_sq(s, 1.0);
  const double h2 = sobolev_norm_sq(s, 2.0);
  if (h2 == 0.0) throw std::invalid_argument("inf_rho: zero field");
  const double rho0 = h1 / h2;

  const Grid3 quad = quadrature_n == 0 ? s.grid() : Grid3(quadrature_n);
  const SymTensorField s_q = on_grid(s, quad);
  const PhysicalField<6> lap = to_physical(laplacian(s_q));  // -(-Lap S)
  const PhysicalField<6> sp = to_physical(s_q);
  const double cell = std::pow(quad.spacing(), 3);
  const std::size_t size = quad.size();

  // ||-rho Lap S - S||_{L^q} evaluated pointwise on the quadrature grid.
  auto objective = [&](double rho) {
    auto mag_sq = [&](std::size_t i) {
      double m = 0.0;
      for (std::size_t c = 0; c < 6; ++c) {
        const double v = -rho * lap.comps[c][i] - sp.comps[c][i];
        m += SymTensorField::weight(c) * v * v;
      }
      return m;
    };
    if (std::isinf(q)) {
      double mx = 0.0;
      for (std::size_t i = 0; i < size; ++i) mx = std::max(mx, mag_sq(i));
      return std::sqrt(mx);
    }
    const double sum = pairwise_sum(0, size, [&](std::size_t i) {
      const double m2 = mag_sq(i);
      return q == 2.0 ? m2 : std::pow(m2, 0.5 * q);
    });
    return std::pow(sum * cell, 1.0 / q);
  };

  // Bracket a < c < b with f(c) <= f(a), f(b); the objective is convex in rho.
  double a = 0.0, c = rho0, b = 2.0 * rho0;
  double fa = objective(a), fc = objective(c), fb = objective(b);
  for (int iter = 0; fc > fa || fc > fb; ++iter) {
    if (iter > 60) throw std::runtime_error("inf_rho_lq: bracket failure");
    const double width = b - a;
    if (fa < fc) {
      b = c, fb = fc;
      c = a, fc = fa;
      a = c - width, fa = objective(a);
    } else {
      a = c, fa = fc;
      c = b, fc = fb;
      b = c + width, fb = objective(b);
    }
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  const double tol = 1e-8 * std::max(std::abs(rho0), 1e-300);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - inv_phi * (b - a), f1 = objective(x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + inv_phi * (b - a), f2 = objective(x2);
    }
  }

  Infimum best{f1 <= f2 ? f1 : f2, f1 <= f2 ? x1 : x2, time_exponent_for(q)};
  for (double cand : {c, rho0}) {
    const double f = cand == c ? fc : objective(cand);
    if (f < best.value) best.value = f, best.rho = cand;
  }
  return best;
}

PhysicalField<3> strain_eigenvalues(const SymTensorField& s) {
  const PhysicalField<6> p = to_physical(s);
  PhysicalField<3> out(s.grid());
  for (std::size_t i = 0; i < s.grid().size(); ++i) {
    double m[6];
    for (std::size_t c = 0; c < 6; ++c) m[c] = p.comps[c][i];
    const auto ev = sym_eigenvalues(m);
    for (std::size_t c = 0; c < 3; ++c) out.comps[c][i] = ev[c];
  }
  return out;
}

RegularityIntegrands regularity_integrands(const SpectralStrainField& s,
                                           const std::vector<double>& alphas,
                                           const std::vector<double>& qs) {
  RegularityIntegrands r;
  r.alphas = alphas;
  r.qs = qs;
  for (double q : qs)
    if (!(q > 1.5)) throw std::invalid_argument("regularity_integrands: q must exceed 3/2");
  for (double a : alphas)
    if (!(a >= 0.0 && a <= 1.0))
      throw std::invalid_argument("regularity_integrands: alpha must lie in [0, 1]");

  const double h1 = sobolev_norm_sq(s, 1.0);
  const double h2 = sobolev_norm_sq(s, 2.0);
  if (h1 == 0.0) {
    r.q_h_alpha.assign(alphas.size(), 0.0);
    r.q_integrand.assign(alphas.size(), 0.0);
    r.inf_rho_lq.assign(qs.size(), 0.0);
    r.inf_rho_lq_integrand.assign(qs.size(), 0.0);
    r.lambda2p_lq.assign(qs.size(), 0.0);
    r.lambda2p_integrand.assign(qs.size(), 0.0);
    return r;
  }

  const SymTensorField q_field = q_perturbation(s, ProductMode::kExact);
  for (double a : alphas) {
    const double norm = std::sqrt(sobolev_norm_sq(q_field, a));
    const double p = 2.0 / (1.0 + a);
    r.q_h_alpha.push_back(norm);
    r.q_integrand.push_back(std::pow(norm / std::sqrt(h1), p));
  }
  r.endpoint_ratio = std::sqrt(sobolev_norm_sq(q_field, 0.0) / h2);

  const PhysicalField<3> eig = strain_eigenvalues(s);
  const double cell = std::pow(s.grid().spacing(), 3);
  const auto& lambda2 = eig.comps[1];
  for (double q : qs) {
    const Infimum inf = inf_rho_lq(s, q);
    r.inf_rho_lq.push_back(inf.value);
    r.inf_rho_lq_integrand.push_back(std::pow(inf.value, inf.p));

    double norm = 0.0;
    if (std::isinf(q)) {
      for (double l : lambda2) norm = std::max(norm, std::max(l, 0.0));
    } else {
      const double sum = pairwise_sum(0, lambda2.size(), [&](std::size_t i) {
        return lambda2[i] > 0.0 ? std::pow(lambda2[i], q) : 0.0;
      });
      norm = std::pow(sum * cell, 1.0 / q);
    }
    r.lambda2p_lq.push_back(norm);
    r.lambda2p_integrand.push_back(std::pow(norm, inf.p));
  }
  return r;
}

double blowup_ratio(const SpectralStrainField& s) {
  if (sobolev_norm_sq(s, 0.0) == 0.0) return 0.0;
  const BlowupRatioTerms t = blowup_ratio_terms(s, ProductMode::kExact);
  return l2(t.numerator) / l2(t.denominator);
}

double spectral_tail_fraction(const SpectralStrainField& s) {
  const double limit = 2.0 * s.grid().cutoff() / 3.0;
  double tail = 0.0, total = 0.0;
  for_each_mode(s.grid(), [&](std::size_t m, const Wavevector& k) {
    double e = 0.0;
    for (std::size_t c = 0; c < 6; ++c) e += SymTensorField::weight(c) * std::norm(s.at(c, m));
    total += e;
    if (max_abs_component(k) > limit) tail += e;
  });
  return total == 0.0 ? 0.0 : tail / total;
}

DiagnosticsRecord compute_record(const SpectralStrainField& s, double t, long step,
                                 const DiagnosticsConfig& cfg) {
  DiagnosticsRecord r;
  r.t = t;
  r.step = step;
  r.enstrophy = sobolev_norm_sq(s, 0.0);
  r.h1_sq = sobolev_norm_sq(s, 1.0);
  r.h2_sq = sobolev_norm_sq(s, 2.0);
  r.det_int = det_integral(s);
  r.constraint_resid = constraint_residual(s);
  const EnstrophyRate rate = enstrophy_rate(s, cfg.mu, cfg.advection);
  r.rate_measured = rate.measured;
  r.rate_identity = rate.identity;
  r.rate_vorticity = rate.vorticity;
  r.tail_fraction = spectral_tail_fraction(s);
  r.resolution_ok = r.tail_fraction < kResolutionTailLimit;
  if (cfg.level == DiagnosticsLevel::kBasic) return r;

  const IdentityResiduals ids = identity_suite(s);
  r.ortho_resid = ids.ortho;
  r.cubic_resids = ids.cubic;

  const RegularityIntegrands ri = regularity_integrands(s, cfg.alphas, cfg.qs);
  r.q_h_alpha = ri.q_h_alpha;
  r.q_integrand = ri.q_integrand;
  r.endpoint_ratio = ri.endpoint_ratio;
  r.inf_rho_lq = ri.inf_rho_lq;
  r.inf_rho_lq_integrand = ri.inf_rho_lq_integrand;
  r.lambda2p_lq = ri.lambda2p_lq;
  r.lambda2p_integrand = ri.lambda2p_integrand;
  if (r.enstrophy > 0.0) {
    r.inf_rho_l2 = inf_rho_l2(s).value;
    for (double a : cfg.alphas) r.inf_rho_halpha.push_back(inf_rho_halpha(s, a).value);
  } else {
    r.inf_rho_l2 = 0.0;
    r.inf_rho_halpha.assign(cfg.alphas.size(), 0.0);
  }
  r.blowup_ratio = blowup_ratio(s);
  return r;
}

std::vector<std::string> record_columns(const DiagnosticsConfig& cfg) {
  std::vector<std::string> cols{"t",
                                "step",
                                "enstrophy",
                                "h1_sq",
                                "h2_sq",
                                "det_int",
                                "constraint_resid",
                                "rate_measured",
                                "rate_identity",
                                "rate_vorticity",
                                "tail_fraction",
                                "resolution_ok",
                                "ortho_resid",
                                "cubic_resid_1",
                                "cubic_resid_2"};
  for (double a : cfg.alphas) cols.push_back("q_h_alpha_" + label(a));
  for (double a : cfg.alphas) cols.push_back("q_integrand_alpha_" + label(a));
  cols.push_back("endpoint_ratio");
  cols.push_back("inf_rho_l2");
  for (double a : cfg.alphas) cols.push_back("inf_rho_halpha_" + label(a));
  for (double q : cfg.qs) cols.push_back("inf_rho_lq_" + label(q));
  for (double q : cfg.qs) cols.push_back("inf_rho_lq_integrand_" + label(q));
  for (double q : cfg.qs) cols.push_back("lambda2p_lq_" + label(q));
  for (double q : cfg.qs) cols.push_back("lambda2p_integrand_" + label(q));
  cols.push_back("blowup_ratio");
  return cols;
}

std::vector<double> record_values(const DiagnosticsRecord& r, const DiagnosticsConfig& cfg) {
  std::vector<double> v{r.t,
                        static_cast<double>(r.step),
                        r.enstrophy,
                        r.h1_sq,
                        r.h2_sq,
                        r.det_int,
                        r.constraint_resid,
                        r.rate_measured,
                        r.rate_identity,
                        r.rate_vorticity,
                        r.tail_fraction,
                        r.resolution_ok ? 1.0 : 0.0,
                        r.ortho_resid,
                        r.cubic_resids[0],
                        r.cubic_resids[1]};
  auto append = [&](const std::vector<double>& xs, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) v.push_back(i < xs.size() ? xs[i] : kNaN);
  };
  append(r.q_h_alpha, cfg.alphas.size());
  append(r.q_integrand, cfg.alphas.size());
  v.push_back(r.endpoint_ratio);
  v.push_back(r.inf_rho_l2);
  append(r.inf_rho_halpha, cfg.alphas.size());
  append(r.inf_rho_lq, cfg.qs.size());
  append(r.inf_rho_lq_integrand, cfg.qs.size());
  append(r.lambda2p_lq, cfg.qs.size());
  append(r.lambda2p_integrand, cfg.qs.size());
  v.push_back(r.blowup_ratio);
  return v;
}

double sobolev_constant(double s) {
  if (!(s > 0.0 && s < 1.5)) throw std::invalid_argument("sobolev_constant: s must lie in (0, 3/2)");
  return std::pow(2.0, -s / 3.0) * std::pow(kPi, -2.0 * s / 3.0) *
         std::sqrt(std::tgamma(1.5 - s) / std::tgamma(1.5 + s));
}

double existence_constant(double mu) {
  const double growth = 2.0 * std::abs(mu) + std::abs(3.0 * mu - 2.0);
  return 1.0 / (std::pow(8.0, 5) * std::pow(growth, 4));
}

std::vector<NamedConstant> reference_constants() {
  const double pi4 = std::pow(kPi, 4);
  return {
      {"riccati_time_scale", 1728.0 * pi4,
       "1728 pi^4: T_max >= this / ||S0||^4_{L2} for every mu"},
      {"riccati_rate_coefficient", 1.0 / (3456.0 * pi4),
       "1/(3456 pi^4): dE/dt <= this * E^3 with E = ||S||^2_{L2}"},
      {"existence_constant_mu_0", existence_constant(0.0), "C_mu at mu = 0"},
      {"existence_constant_mu_2_3", existence_constant(2.0 / 3.0), "C_mu at mu = 2/3"},
      {"existence_constant_mu_1", existence_constant(1.0), "C_mu at mu = 1"},
      {"heat_kernel_l2_norm_stated", std::pow(8.0, -0.25),
       "8^(-1/4), the heat-profile L2 norm entering C_mu"},
      {"heat_kernel_l2_norm_gaussian", std::pow(8.0 * kPi, -0.75),
       "(8 pi)^(-3/4), L2 norm of (4 pi)^(-3/2) exp(-|x|^2/4)"},
      {"sobolev_constant_s1", sobolev_constant(1.0),
       "(1/sqrt 3)(2/pi)^(2/3), sharp H1 -> L6 constant on R^3"},
      {"endpoint_eigen_threshold", 2.0 * std::pow(kPi / 2.0, 4.0 / 3.0),
       "2 (pi/2)^(4/3), endpoint lower bound on inf_rho ||-rho Lap S - S||_{L^3/2}"},
  };
}

std::optional<double> blowup_time_bound(double f0, double e0, double k0) {
  if (!(f0 > 0.0)) return std::nullopt;
  return (-e0 + std::sqrt(e0 * e0 + f0 * k0)) / f0;
}

BlowupReport blowup_report(const SpectralStrainField& s0,
                           const std::vector<DiagnosticsRecord>& series) {
  BlowupReport r;
  const double h1 = sobolev_norm_sq(s0, 1.0);
  const double det = det_integral(s0);
  r.f0 = -3.0 * h1 - 4.0 * det;
  r.e0 = sobolev_norm_sq(s0, 0.0);
  r.k0 = 0.5 * sobolev_norm_sq(velocity_from_strain(s0), 0.0);
  r.t_star = blowup_time_bound(r.f0, r.e0, r.k0);
  r.seed_condition = -det > 0.75 * h1;
  r.denominator_reading = kBlowupDenominatorReading;
  for (const auto& rec : series) {
    if (std::isnan(rec.blowup_ratio)) continue;
    r.max_ratio = std::max(r.max_ratio, rec.blowup_ratio);
    if (rec.blowup_ratio > 2.0 && !r.first_ratio_violation_t) r.first_ratio_violation_t = rec.t;
  }
  return r;
}

}  // namespace strainlab
