#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "strainlab/initial_data.hpp"
#include "strainlab/norms.hpp"
#include "strainlab/operators.hpp"
#include "strainlab/solver.hpp"

using namespace strainlab;

TEST_CASE("linear flow decays a unit shell mode by exp(-dt) per step") {
  SimConfig cfg;
  cfg.grid_n = 16;
  cfg.nonlinear = false;
  cfg.dt = 0.05;
  cfg.t_end = 0.5;
  cfg.diagnostics = DiagnosticsLevel::kBasic;
  const auto s0 = oracle::strain_from_waves(cfg.grid(), fixtures::unit_shell_waves());
  std::vector<SpectralStrainField> states{s0};
  run(cfg, s0, {}, [&](const SimState& st) { states.push_back(st.s); });
  REQUIRE(states.size() == 11);
  const double factor = std::exp(-0.05);
  double err = 0.0;
  for (std::size_t i = 1; i < states.size(); ++i)
    err = std::max(err, fixtures::max_abs_diff(states[i], factor * states[i - 1]));
  CHECK(err < 1e-12 * fixtures::max_abs(s0));
}

TEST_CASE("zero data stays zero and t_end = 0 returns the initial record") {
  SimConfig cfg;
  cfg.grid_n = 16;
  cfg.dt = 0.01;
  cfg.t_end = 0.05;
  cfg.diagnostics = DiagnosticsLevel::kBasic;
  auto res = run(cfg, SpectralStrainField(cfg.grid()));
  CHECK(fixtures::max_abs(res.final_state.s) == 0.0);
  cfg.t_end = 0.0;
  auto none = run(cfg);
  CHECK(none.records.size() == 1);
  CHECK(none.final_state.step_count == 0);
}

TEST_CASE("mu = 0 keeps the H1 norm nonincreasing") {
  SimConfig cfg;
  cfg.mu = 0.0;
  cfg.grid_n = 16;
  cfg.t_end = 0.2;
  cfg.sample_every = 1;
  cfg.diagnostics = DiagnosticsLevel::kBasic;
  cfg.initial = RandomBandInit{3, 3, 5.0};
  const auto res = run(cfg);
  for (std::size_t i = 1; i < res.records.size(); ++i)
    CHECK(res.records[i].h1_sq <= res.records[i - 1].h1_sq);
  CHECK(res.final_state.t == cfg.t_end);
  CHECK(constraint_residual(res.final_state.s) < 1e-10);
}

TEST_CASE("runs are deterministic") {
  SimConfig cfg;
  cfg.grid_n = 16;
  cfg.t_end = 0.05;
  cfg.diagnostics = DiagnosticsLevel::kBasic;
  cfg.initial = RandomBandInit{11, 4, 3.0};
  const auto a = run(cfg);
  const auto b = run(cfg);
  CHECK(a.final_state.s == b.final_state.s);
  CHECK(a.final_state.t == b.final_state.t);
}

TEST_CASE("fourth-order self-convergence on a smooth run") {
  SimConfig cfg;
  cfg.grid_n = 16;
  cfg.mu = 1.0;
  cfg.t_end = 0.2;
  cfg.diagnostics = DiagnosticsLevel::kBasic;
  const auto s0 = random_strain(cfg.grid(), 2, 2, 20.0);
  auto at = [&](double dt) {
    SimConfig c = cfg;
    c.dt = dt;
    c.sample_every = 1000;
    return run(c, s0).final_state.s;
  };
  const auto coarse = at(0.02), mid = at(0.01), fine = at(0.005);
  const double e1 = std::sqrt(sobolev_norm_sq(coarse - mid, 0.0));
  const double e2 = std::sqrt(sobolev_norm_sq(mid - fine, 0.0));
  MESSAGE("Richardson ratio " << e1 / e2);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("non-finite data is a hard failure carrying the last state") {
  SimConfig cfg;
  cfg.grid_n = 16;
  cfg.dt = 0.01;
  SpectralStrainField s(cfg.grid());
  s.at(0, 1) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  const SimState st = initial_state(s);
  CHECK_THROWS_AS(step(st, cfg), SolverError);
}

TEST_CASE("existence time bounds") {
  const Grid3 g(16);
  const auto s = random_strain(g, 1, 3, 1.0);
  const auto t0 = existence_time_bounds(s, 0.0);
  CHECK(t0.t_enstrophy == doctest::Approx(1728.0 * std::pow(std::numbers::pi, 4)).epsilon(1e-12));
  CHECK(t0.t_enstrophy == doctest::Approx(1.683229e5).epsilon(1e-6));
  CHECK(t0.t_general == doctest::Approx(1.0 / 524288.0).epsilon(1e-12));
  CHECK(existence_time_bounds(s, 2.0 / 3.0).t_general == doctest::Approx(81.0 / 8388608.0).epsilon(1e-12));
  const auto zero = existence_time_bounds(SpectralStrainField(g), 1.0);
  CHECK(std::isinf(zero.t_general));
  CHECK(std::isinf(zero.t_enstrophy));
}

TEST_CASE("Picard iteration") {
  SimConfig cfg;
  cfg.grid_n = 16;
  cfg.dealias_cutoff = 5;
  cfg.mu = 1.0;
  const Grid3 g = cfg.grid();
  const auto zero = picard_fixed_point(SpectralStrainField(g), cfg, 0.1, 5);
  CHECK(zero.converged);
  CHECK(zero.distances.size() == 1);
  CHECK(fixtures::max_abs(zero.iterate.back()) == 0.0);

  const auto s0 = random_strain(g, 3, 2, 0.5);
  const auto r = picard_fixed_point(s0, cfg, 0.2, 30, 16);
  CHECK(r.converged);
  CHECK(!r.nonconvergence);
  CHECK(longest_contraction_run(r) >= 4);

  cfg.advection = true;
  CHECK_THROWS_AS(picard_fixed_point(s0, cfg, 0.1, 3), std::invalid_argument);
}

TEST_CASE("blow-up monitor") {
  SimConfig cfg;
  std::vector<DiagnosticsRecord> series(3);
  for (int i = 0; i < 3; ++i) {
    series[i].t = 0.1 * i;
    series[i].enstrophy = 1.0 - 0.1 * i;
  }
  auto rep = blowup_monitor(series, cfg);
  CHECK(!rep.envelope_violated);
  CHECK(rep.verdict == "no blow-up signature");

  series[2].enstrophy = 5.0;
  rep = blowup_monitor(series, cfg);
  CHECK(rep.envelope_violated);
  CHECK(*rep.first_envelope_violation_t == doctest::Approx(0.2));

  rep = blowup_monitor(series, cfg, BlowupFlag::kThresholdHit);
  CHECK(rep.verdict.find("consistent with blow-up") == 0);

  series[1].resolution_ok = false;
  rep = blowup_monitor(series, cfg, BlowupFlag::kThresholdHit);
  CHECK(!rep.resolution_intact);
  CHECK(rep.verdict.find("resolution lost") == 0);
  CHECK(!rep.envelope_violated);

  CHECK(riccati_envelope(1.0, 0.0) == 1.0);
  CHECK(std::isinf(riccati_envelope(1.0, 1e9)));
}

TEST_CASE("config validation") {
  SimConfig cfg;
  cfg.blowup_threshold = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SimConfig{};
  cfg.dt = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SimConfig{};
  cfg.grid_n = 48;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
