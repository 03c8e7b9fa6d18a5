#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "strainlab/initial_data.hpp"
#include "strainlab/norms.hpp"
#include "strainlab/operators.hpp"
#include "strainlab/transform.hpp"

using namespace strainlab;

TEST_CASE("strain projection against the per-mode least-squares oracle") {
  const Grid3 g(16);
  const auto m = random_symmetric_tensor(g, 4, 5);
  const auto p = strain_project(m);
  double err = 0.0;
  for_each_derivative_mode(g, [&](std::size_t idx, const Wavevector& k) {
    std::array<Complex, 6> mk;
    for (std::size_t c = 0; c < 6; ++c) mk[c] = m.at(c, idx);
    const auto want = oracle::project_mode(mk, k);
    for (std::size_t c = 0; c < 6; ++c) err = std::max(err, std::abs(p.at(c, idx) - want[c]));
  });
  CHECK(err / fixtures::max_abs(m) < 1e-12);
}

TEST_CASE("strain projection is an orthogonal projection") {
  const Grid3 g(16);
  const auto a = random_symmetric_tensor(g, 7, 6);
  const auto b = random_symmetric_tensor(g, 8, 6);
  const auto pa = strain_project(a);
  CHECK(fixtures::max_abs_diff(strain_project(pa), pa) < 1e-13 * fixtures::max_abs(pa));
  const double lhs = inner_product(pa, b);
  const double rhs = inner_product(a, strain_project(b));
  CHECK(fixtures::rel(lhs, rhs) < 1e-12);
  CHECK(constraint_residual(pa) < 1e-12);
  CHECK(trace_defect(pa) < 1e-14);
  CHECK(constraint_residual(a) > 0.1);
}

TEST_CASE("Leray projection") {
  const Grid3 g(16);
  SpectralVectorField v(g);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto s = random_scalar(g, 40 + c, 6);
    std::copy(s.component(0).begin(), s.component(0).end(), v.component(c).begin());
  }
  const auto p = leray_project(v);
  CHECK(divergence_defect(p) < 1e-15);
  CHECK(fixtures::max_abs_diff(leray_project(p), p) < 1e-14);
  CHECK(divergence_defect(v) > 0.1);
}

TEST_CASE("velocity, strain and vorticity reconstructions") {
  const Grid3 g(16);
  const auto u = random_velocity(g, 12, 5);
  const auto s = sym_grad(u);
  CHECK(constraint_residual(s) < 1e-13);
  CHECK(fixtures::rel_l2_diff(velocity_from_strain(s), u) < 1e-13);
  const auto w = curl(u);
  CHECK(fixtures::rel_l2_diff(strain_from_vorticity(w), s) < 1e-13);
  CHECK(fixtures::rel_l2_diff(vorticity_from_strain(s), w) < 1e-13);

  CHECK_THROWS_AS(velocity_from_strain(random_symmetric_tensor(g, 1, 4)), std::domain_error);
  SpectralVectorField not_df(g);
  const auto phi = random_scalar(g, 2, 4);
  not_df = gradient(phi);
  CHECK_THROWS_AS(strain_from_vorticity(not_df), std::domain_error);
}

TEST_CASE("isometry between strain, vorticity and velocity gradient") {
  const Grid3 g(16);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto u = random_velocity(g, seed, 5);
    const auto s = sym_grad(u);
    const auto w = curl(u);
    for (double alpha : {0.0, 1.0}) {
      const double ss = sobolev_norm_sq(s, alpha);
      CHECK(fixtures::rel(ss, 0.5 * sobolev_norm_sq(w, alpha)) < 1e-11);
      CHECK(fixtures::rel(ss, 0.5 * sobolev_norm_sq(u, alpha + 1.0)) < 1e-11);
    }
  }
}

TEST_CASE("Taylor-Green reference values") {
  const double pi3 = std::pow(std::numbers::pi, 3);
  const Grid3 g(16);
  const auto u = taylor_green_velocity(g);
  CHECK(fixtures::rel(sobolev_norm_sq(u, 0.0), 2 * pi3) < 1e-12);
  CHECK(fixtures::rel(sobolev_norm_sq(taylor_green_strain(g), 0.0), 3 * pi3) < 1e-12);
  CHECK(divergence_defect(u) < 1e-15);
}

TEST_CASE("Fourier multipliers") {
  const Grid3 g(16);
  SpectralScalarField f(g);
  f.at(0, g.flat(1, 0, 0)) = 0.5;
  f.at(0, g.flat(g.index_of(-1), 0, 0)) = 0.5;
  const auto h = heat_semigroup(f, 0.3);
  CHECK(h.at(0, g.flat(1, 0, 0)).real() == doctest::Approx(0.5 * std::exp(-0.3)).epsilon(1e-15));
  CHECK(fixtures::max_abs_diff(laplacian(f), -1.0 * f) == 0.0);
  CHECK(fixtures::max_abs_diff(inv_laplacian(laplacian(f)), f) == 0.0);
  CHECK_THROWS_AS(OperatorSymbol::heat(-1.0), std::invalid_argument);
  f.at(0, 0) = 1.0;
  CHECK_THROWS_AS(inv_laplacian(f), std::invalid_argument);
}

TEST_CASE("gradient and divergence are adjoint") {
  const Grid3 g(16);
  const auto phi = random_scalar(g, 3, 6);
  const auto v = random_velocity(g, 4, 6);
  SpectralVectorField w(g);
  for (std::size_t c = 0; c < 3; ++c) {
    const auto s = random_scalar(g, 50 + c, 6);
    std::copy(s.component(0).begin(), s.component(0).end(), w.component(c).begin());
  }
  CHECK(std::abs(inner_product(gradient(phi), v)) < 1e-12 * std::sqrt(sobolev_norm_sq(phi, 1.0) * sobolev_norm_sq(v, 0.0)));
  CHECK(fixtures::rel(inner_product(gradient(phi), w), -inner_product(phi, divergence(w))) < 1e-12);
  // div of a symmetric tensor against a vector equals -<M, sym grad v>.
  const auto m = random_symmetric_tensor(g, 9, 6);
  CHECK(fixtures::rel(inner_product(tensor_divergence(m), w), -inner_product(m, sym_grad(w))) < 1e-12);
}

TEST_CASE("strain of a wave built by hand") {
  const Grid3 g(16);
  const auto waves = fixtures::unit_shell_waves();
  const auto s = oracle::strain_from_waves(g, waves);
  CHECK(constraint_residual(s) < 1e-14);
  const auto p = to_physical(s);
  const double h = g.spacing();
  for (int trial = 0; trial < 4; ++trial) {
    const int i = 3 * trial + 1, j = 5 * trial % 16, l = 7 * trial % 16;
    std::array<double, 6> want{};
    for (const auto& w : waves) {
      const auto v = oracle::wave_strain_at(w, {i * h, j * h, l * h});
      for (int q = 0; q < 6; ++q) want[q] += v[q];
    }
    for (std::size_t q = 0; q < 6; ++q)
      CHECK(p.comps[q][g.flat(i, j, l)] == doctest::Approx(want[q]).epsilon(1e-13));
  }
}
