#include "strainlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "strainlab/diagnostics.hpp"
#include "strainlab/initial_data.hpp"
#include "strainlab/norms.hpp"
#include "strainlab/operators.hpp"
#include "strainlab/transform.hpp"

namespace strainlab {
namespace {

double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace

SymTensorField add_trace(const SymTensorField& s) {
  // Constant isotropic part at the rms level of S; tr(M^3) - 3 det M = 9/2 c |S|^2 pointwise.
  SymTensorField m = s;
  const Complex c(std::sqrt(sobolev_norm_sq(s, 0.0) / kBoxVolume), 0.0);
  for (int q : {0, 3, 5}) m.at(q, 0) += c;
  return m;
}

std::vector<CheckLine> run_verify_suite(std::uint64_t seed, int n, int fields) {
  const Grid3 grid(n);
  const int band = std::max(1, n / 4);
  double ortho = 0, cubic = 0, adv = 0, combo = 0, qpair = 0, iso0 = 0, iso1 = 0;
  double idem = 0, adjoint = 0, constraint = 0, det_trace = 0, rate = 0, spread = 0, vort = 0;
  double halpha = 0, lq2 = 0, control = kInf;

  for (int f = 0; f < fields; ++f) {
    const std::uint64_t sd = seed + static_cast<std::uint64_t>(f);
    const SpectralVectorField u = random_velocity(grid, sd, band);
    const SpectralStrainField s = sym_grad(u);

    const IdentityResiduals ids = identity_suite(s);
    ortho = std::max(ortho, ids.ortho);
    cubic = std::max({cubic, ids.cubic[0], ids.cubic[1]});
    adv = std::max(adv, ids.advection_pairing);
    combo = std::max(combo, ids.combination_pairing);
    qpair = std::max(qpair, ids.q_pairing);

    const SymTensorField broken = add_trace(s);
    const IdentityResiduals bad = identity_suite(broken);
    control = std::min(control, std::max(bad.cubic[0], bad.cubic[1]));

    const SpectralVectorField w = curl(u);
    iso0 = std::max(iso0, rel(sobolev_norm_sq(s, 0.0), 0.5 * sobolev_norm_sq(w, 0.0)));
    iso1 = std::max(iso1, rel(sobolev_norm_sq(s, 1.0), 0.5 * sobolev_norm_sq(w, 1.0)));

    const SymTensorField m = random_symmetric_tensor(grid, sd + 2000, band);
    const SymTensorField pm = strain_project(m);
    const SymTensorField ppm = strain_project(pm);
    idem = std::max(idem, std::sqrt(sobolev_norm_sq(ppm - pm, 0.0) / sobolev_norm_sq(pm, 0.0)));
    adjoint = std::max(adjoint, rel(inner_product(pm, broken), inner_product(m, strain_project(broken))));
    constraint = std::max(constraint, constraint_residual(pm));

    const double l3 = lq_norm(s, 3.0, 2 * n);
    det_trace = std::max(det_trace, std::abs(det_integral(s) - trace_cube_integral(s) / 3.0) / (l3 * l3 * l3));

    double lo = kInf, hi = -kInf;
    for (double mu : {0.0, 2.0 / 3.0, 1.0}) {
      const EnstrophyRate r = enstrophy_rate(s, mu, false);
      rate = std::max(rate, rel(r.measured, r.identity));
      vort = std::max(vort, rel(r.vorticity, r.identity));
      lo = std::min(lo, r.measured);
      hi = std::max(hi, r.measured);
    }
    const EnstrophyRate full = enstrophy_rate(s, 1.0, true);
    rate = std::max(rate, rel(full.measured, full.identity));
    spread = std::max(spread, (hi - lo) / std::max(std::abs(hi), std::abs(lo)));

    halpha = std::max(halpha, rel(inf_rho_halpha(s, 0.0).value, inf_rho_l2(s).value));
    const Infimum q2 = inf_rho_lq(s, 2.0);
    lq2 = std::max(lq2, rel(q2.value * q2.value, inf_rho_l2(s).value));
  }

  return {
      {"orthogonality <-Lap S, w(x)w>", ortho, 1e-10},
      {"cubic identity triple", cubic, 1e-10},
      {"advection pairing <(u.grad)S, S>", adv, 1e-10},
      {"combination pairing", combo, 1e-10},
      {"perturbation pairing <Q, S>", qpair, 1e-10},
      {"trace-broken control (must fail)", control, 1e-3, true},
      {"isometry alpha=0", iso0, 1e-11},
      {"isometry alpha=1", iso1, 1e-11},
      {"P_st idempotent", idem, 1e-12},
      {"P_st self-adjoint", adjoint, 1e-12},
      {"constraint residual of P_st output", constraint, 1e-12},
      {"int det S vs int tr(S^3)/3", det_trace, 1e-11},
      {"enstrophy rate identity", rate, 1e-9},
      {"rate mu-independence", spread, 1e-9},
      {"vorticity-form rate", vort, 1e-9},
      {"H^0 infimum vs L^2 infimum", halpha, 1e-13},
      {"L^2 infimum by search vs closed form", lq2, 1e-7},
  };
}

std::string format_check_table(const std::vector<CheckLine>& lines) {
  std::string out;
  char buf[160];
  for (const auto& l : lines) {
    std::snprintf(buf, sizeof buf, "%-40s %12.3e %s %8.1e  %s\n", l.name.c_str(), l.value,
                  l.must_exceed ? ">" : "<=", l.tolerance, l.pass() ? "PASS" : "FAIL");
    out += buf;
  }
  return out;
}

}  // namespace strainlab
