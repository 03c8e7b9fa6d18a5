#include "strainlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "strainlab/initial_data.hpp"
#include "strainlab/io.hpp"
#include "strainlab/nonlinearity.hpp"
#include "strainlab/norms.hpp"
#include "strainlab/operators.hpp"
#include "strainlab/transform.hpp"

namespace strainlab {
namespace {

bool all_finite(const SpectralStrainField& s) {
  for (std::size_t c = 0; c < 6; ++c)
    for (const Complex& z : s.component(c))
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

SymTensorField rhs_nonlinear(const SpectralStrainField& s, const SimConfig& cfg) {
  if (!cfg.nonlinear) return SymTensorField(s.grid());
  return mu_rhs(s, cfg.mu, cfg.advection, ProductMode::kDealiased);
}

// Keeps S in the strain space with a zero mean and no modes beyond the cutoff.
SpectralStrainField clean(const SpectralStrainField& s) {
  SpectralStrainField out = truncate(strain_project(s), s.grid().cutoff());
  for (std::size_t c = 0; c < 6; ++c) out.at(c, 0) = Complex{};
  return out;
}

}  // namespace

Grid3 SimConfig::grid() const { return Grid3(grid_n, dealias_cutoff); }

DiagnosticsConfig SimConfig::diagnostics_config() const {
  DiagnosticsConfig d;
  d.mu = mu;
  d.advection = advection;
  d.level = diagnostics;
  d.alphas = alphas;
  d.qs = qs;
  return d;
}

void SimConfig::validate() const {
  (void)grid();
  if (dt && !(*dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(cfl_factor > 0.0)) throw std::invalid_argument("cfl_factor must be positive");
  if (!(min_dt > 0.0)) throw std::invalid_argument("min_dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
  if (sample_every < 1) throw std::invalid_argument("sample_every must be at least 1");
  if (!(blowup_threshold > 1.0)) throw std::invalid_argument("blowup_threshold must exceed 1");
  if (!std::isfinite(mu)) throw std::invalid_argument("mu must be finite");
  for (double a : alphas)
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("alpha values must lie in [0, 1]");
  for (double q : qs)
    if (!(q > 1.5)) throw std::invalid_argument("q values must exceed 3/2");
  if (const auto* r = std::get_if<RandomBandInit>(&initial)) {
    if (r->band < 1) throw std::invalid_argument("random band must be at least 1");
    if (r->band > grid().cutoff())
      throw std::invalid_argument("random band exceeds the dealiasing cutoff");
  }
}

const char* to_string(BlowupFlag f) {
  switch (f) {
    case BlowupFlag::kNone: return "none";
    case BlowupFlag::kThresholdHit: return "threshold_hit";
    case BlowupFlag::kDtUnderflow: return "dt_underflow";
  }
  return "none";
}

double grad_u_sup(const SpectralStrainField& s) {
  const PhysicalField<6> sp = to_physical(s);
  const PhysicalField<3> wp = to_physical(vorticity_from_strain(s));
  double mx = 0.0;
  for (std::size_t i = 0; i < s.grid().size(); ++i) {
    double m = 0.0;
    for (std::size_t c = 0; c < 6; ++c) m += SymTensorField::weight(c) * sp.comps[c][i] * sp.comps[c][i];
    for (std::size_t c = 0; c < 3; ++c) m += 0.5 * wp.comps[c][i] * wp.comps[c][i];
    mx = std::max(mx, m);
  }
  return std::sqrt(mx);
}

SpectralStrainField if_rk4_step(const SpectralStrainField& s, double h, const SimConfig& cfg) {
  const double half = 0.5 * h;
  const SpectralStrainField e_half_s = heat_semigroup(s, half);
  const SpectralStrainField e_full_s = heat_semigroup(s, h);

  const SymTensorField k1 = -1.0 * rhs_nonlinear(s, cfg);
  const SymTensorField k2 = -1.0 * rhs_nonlinear(heat_semigroup(s + half * k1, half), cfg);
  const SymTensorField k3 = -1.0 * rhs_nonlinear(e_half_s + half * k2, cfg);
  const SymTensorField k4 = -1.0 * rhs_nonlinear(e_full_s + h * heat_semigroup(k3, half), cfg);

  SymTensorField mid = k2;
  mid += k3;
  SymTensorField incr = heat_semigroup(k1, h);
  incr.axpy(2.0, heat_semigroup(mid, half));
  incr += k4;
  SpectralStrainField next = e_full_s;
  next.axpy(h / 6.0, incr);
  return clean(next);
}

StepResult step(const SimState& state, const SimConfig& cfg) {
  double dt = cfg.dt ? *cfg.dt : cfg.cfl_factor / std::max(1.0, grad_u_sup(state.s));
  if (!cfg.dt && dt < cfg.min_dt) return {state, 0.0, BlowupFlag::kDtUnderflow};
  const double remaining = cfg.t_end - state.t;
  // Land exactly on t_end instead of overshooting by a sliver.
  if (dt >= remaining * (1.0 - 1e-12)) dt = remaining;
  if (!(dt > 0.0)) return {state, 0.0, BlowupFlag::kDtUnderflow};

  SpectralStrainField next = if_rk4_step(state.s, dt, cfg);
  if (!all_finite(next))
    throw SolverError("non-finite coefficients at step " + std::to_string(state.step_count + 1),
                      state);
  const double t_next = (dt == remaining) ? cfg.t_end : state.t + dt;
  StepResult r{SimState{t_next, std::move(next), state.step_count + 1, state.initial_enstrophy},
               dt, BlowupFlag::kNone};
  if (state.initial_enstrophy > 0.0 &&
      sobolev_norm_sq(r.state.s, 0.0) > cfg.blowup_threshold * state.initial_enstrophy)
    r.blowup_flag = BlowupFlag::kThresholdHit;
  return r;
}

SpectralStrainField make_initial_strain(const SimConfig& cfg) {
  const Grid3 grid = cfg.grid();
  SpectralStrainField s(grid);
  if (const auto* tg = std::get_if<TaylorGreenInit>(&cfg.initial)) {
    s = taylor_green_strain(grid, tg->amplitude);
  } else if (const auto* rb = std::get_if<RandomBandInit>(&cfg.initial)) {
    s = random_strain(grid, rb->seed, rb->band, rb->amplitude);
    if (rb->amplify) s = amplify_blowup_seed(s, rb->margin);
  } else {
    const auto& snap = std::get<SnapshotInit>(cfg.initial);
    const Snapshot loaded = read_snapshot(snap.path, grid.n());
    if (loaded.kind != FieldKind::kStrain)
      throw std::invalid_argument(snap.path + ": initial snapshot must hold a strain field");
    s = SpectralStrainField(grid);
    for (std::size_t c = 0; c < 6; ++c)
      std::copy(loaded.strain->component(c).begin(), loaded.strain->component(c).end(),
                s.component(c).begin());
  }
  return clean(s);
}

SimState initial_state(SpectralStrainField s0) {
  const double e0 = sobolev_norm_sq(s0, 0.0);
  return SimState{0.0, std::move(s0), 0, e0};
}

RunResult run(const SimConfig& cfg, const SampleObserver& on_sample, const StepObserver& on_step) {
  cfg.validate();
  return run(cfg, make_initial_strain(cfg), on_sample, on_step);
}

RunResult run(const SimConfig& cfg, SpectralStrainField s0, const SampleObserver& on_sample,
              const StepObserver& on_step) {
  cfg.validate();
  const DiagnosticsConfig dcfg = cfg.diagnostics_config();
  RunResult out{{}, initial_state(std::move(s0)), BlowupFlag::kNone};
  SimState& state = out.final_state;

  auto sample = [&] {
    out.records.push_back(compute_record(state.s, state.t, state.step_count, dcfg));
    if (on_sample) on_sample(state, out.records.back());
  };
  sample();
  long last_sampled = 0;
  while (state.t < cfg.t_end) {
    StepResult r = step(state, cfg);
    if (r.blowup_flag == BlowupFlag::kDtUnderflow) {
      out.flag = r.blowup_flag;
      break;
    }
    state = std::move(r.state);
    if (on_step) on_step(state);
    if (state.step_count % cfg.sample_every == 0) {
      sample();
      last_sampled = state.step_count;
    }
    if (r.blowup_flag == BlowupFlag::kThresholdHit) {
      out.flag = r.blowup_flag;
      break;
    }
  }
  if (last_sampled != state.step_count) sample();
  return out;
}

// ---- Duhamel fixed point ---------------------------------------------------

PicardResult picard_fixed_point(const SpectralStrainField& s0, const SimConfig& cfg, double t_final,
                                int iterations, int mesh_intervals) {
  if (cfg.advection) throw std::invalid_argument("picard_fixed_point: advection must be off");
  if (!(t_final > 0.0)) throw std::invalid_argument("picard_fixed_point: T must be positive");
  if (mesh_intervals < 1 || iterations < 1)
    throw std::invalid_argument("picard_fixed_point: need at least one interval and iteration");

  const double h = t_final / mesh_intervals;
  PicardResult res;
  std::vector<SpectralStrainField> free_flow;
  for (int j = 0; j <= mesh_intervals; ++j) {
    res.times.push_back(j == mesh_intervals ? t_final : j * h);
    free_flow.push_back(heat_semigroup(s0, res.times.back()));
  }
  res.iterate = free_flow;
  // Iterates are free_flow + duhamel. Distances are taken on the Duhamel parts
  // so the free flow does not set the round-off level of the differences.
  std::vector<SymTensorField> duhamel(free_flow.size(), SymTensorField(s0.grid()));

  int above_one = 0;
  for (int m = 0; m < iterations; ++m) {
    // A_j = e^{h Lap} A_{j-1} + h F_j with A_0 = h F_0 / 2; the trapezoid sum
    // up to t_j is then A_j - h F_j / 2.
    std::optional<SymTensorField> acc;
    double dist = 0.0, scale = 0.0;
    for (int j = 0; j <= mesh_intervals; ++j) {
      const SymTensorField f = rhs_nonlinear(res.iterate[j], cfg);
      if (!acc) {
        acc = 0.5 * h * f;
      } else {
        acc = heat_semigroup(std::move(*acc), h);
        acc->axpy(h, f);
      }
      SymTensorField dj(s0.grid());
      if (j > 0) {
        dj = -1.0 * *acc;
        dj.axpy(0.5 * h, f);
      }
      dist = std::max(dist, std::sqrt(sobolev_norm_sq(dj - duhamel[j], 0.0)));
      scale = std::max(scale, std::sqrt(sobolev_norm_sq(dj, 0.0)));
      duhamel[j] = std::move(dj);
    }
    for (int j = 0; j <= mesh_intervals; ++j) res.iterate[j] = free_flow[j] + duhamel[j];
    if (!res.distances.empty()) {
      const double prev = res.distances.back();
      const double ratio = prev > 0.0 ? dist / prev : 0.0;
      res.ratios.push_back(ratio);
      above_one = ratio >= 1.0 ? above_one + 1 : 0;
      if (above_one >= 3) res.nonconvergence = true;
    }
    res.distances.push_back(dist);
    if (dist <= 1e-14 * scale || dist == 0.0) {
      res.converged = true;
      break;
    }
  }
  return res;
}

int longest_contraction_run(const PicardResult& r) {
  int best = 0, cur = 0;
  for (double q : r.ratios) {
    cur = q < 1.0 ? cur + 1 : 0;
    best = std::max(best, cur);
  }
  return best;
}

ExistenceTimes existence_time_bounds(const SpectralStrainField& s0, double mu) {
  const double e = sobolev_norm_sq(s0, 0.0);
  if (e == 0.0) return {};
  const double n4 = e * e;
  return {existence_constant(mu) / n4, 1728.0 * std::pow(std::numbers::pi, 4) / n4};
}

// ---- blow-up monitor -------------------------------------------------------

double riccati_envelope(double e0, double t) {
  const double root = 1.0 - e0 * e0 * t / (1728.0 * std::pow(std::numbers::pi, 4));
  if (root <= 0.0) return kInf;
  return e0 / std::sqrt(root);
}

std::optional<double> gronwall_constant(double alpha) {
  if (alpha == 0.0) return 0.5;
  if (alpha == 1.0) return 2.0;
  return std::nullopt;
}

MonitorReport blowup_monitor(const std::vector<DiagnosticsRecord>& series, const SimConfig& cfg,
                             BlowupFlag flag) {
  MonitorReport rep;
  rep.threshold_hit = flag == BlowupFlag::kThresholdHit;
  if (series.empty()) {
    rep.verdict = "no samples";
    return rep;
  }
  const DiagnosticsRecord& first = series.front();
  constexpr double kSlack = 1e-12;

  // Gronwall H1 envelopes apply to the full equation only.
  const bool full_equation = cfg.advection && cfg.mu == 1.0 && cfg.nonlinear;
  std::vector<double> integral(cfg.alphas.size(), 0.0);
  bool gronwall_checked = false;
  bool gronwall_bad = false;

  for (std::size_t i = 0; i < series.size(); ++i) {
    const DiagnosticsRecord& r = series[i];
    if (!r.resolution_ok && rep.resolution_intact) {
      rep.resolution_intact = false;
      rep.resolution_lost_t = r.t;
    }
    const bool resolved = rep.resolution_intact;
    if (resolved) {
      const double env = riccati_envelope(first.enstrophy, r.t - first.t);
      if (r.enstrophy > env * (1.0 + kSlack)) {
        rep.envelope_violated = true;
        if (!rep.first_envelope_violation_t) rep.first_envelope_violation_t = r.t;
      }
      if (i > 0 && !(r.enstrophy > series[i - 1].enstrophy)) rep.increasing_while_resolved = false;
    }
    if (!std::isnan(r.blowup_ratio)) {
      rep.max_ratio = std::max(rep.max_ratio, r.blowup_ratio);
      if (r.blowup_ratio > 2.0 && !rep.first_ratio_violation_t) rep.first_ratio_violation_t = r.t;
    }
    if (full_equation && i > 0 && resolved) {
      const DiagnosticsRecord& p = series[i - 1];
      for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
        const auto c = gronwall_constant(cfg.alphas[a]);
        if (!c || a >= r.q_integrand.size() || a >= p.q_integrand.size()) continue;
        integral[a] += 0.5 * (r.t - p.t) * (r.q_integrand[a] + p.q_integrand[a]);
        if (std::isnan(integral[a])) continue;
        gronwall_checked = true;
        if (r.h1_sq > first.h1_sq * std::exp(*c * integral[a]) * (1.0 + kSlack)) gronwall_bad = true;
      }
    }
  }
  if (gronwall_checked) rep.gronwall_violated = gronwall_bad;

  if (!rep.resolution_intact) {
    rep.verdict = "resolution lost at t = " + std::to_string(*rep.resolution_lost_t) +
                  "; no conclusion past that time";
  } else if (rep.threshold_hit) {
    rep.verdict = "consistent with blow-up (enstrophy threshold reached with resolution intact)";
  } else if (flag == BlowupFlag::kDtUnderflow) {
    rep.verdict = "consistent with blow-up (time step underflow with resolution intact)";
  } else {
    rep.verdict = "no blow-up signature";
  }
  if (rep.envelope_violated) rep.verdict += "; enstrophy above the Riccati envelope";
  return rep;
}

}  // namespace strainlab
