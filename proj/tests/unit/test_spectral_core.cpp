#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "strainlab/grid.hpp"
#include "strainlab/initial_data.hpp"
#include "strainlab/norms.hpp"
#include "strainlab/product.hpp"
#include "strainlab/reduce.hpp"
#include "strainlab/transform.hpp"

using namespace strainlab;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid3(48), std::invalid_argument);
  CHECK_THROWS_AS(Grid3(4), std::invalid_argument);
  CHECK_THROWS_AS(Grid3(32, 11), std::invalid_argument);
  CHECK_THROWS_AS(Grid3(32, 0), std::invalid_argument);
  const Grid3 g(32);
  CHECK(g.cutoff() == 10);
  CHECK(g.wavenumber(15) == 15);
  CHECK(g.wavenumber(16) == -16);
  CHECK(g.derivative_wavenumber(16) == 0);
  CHECK(g.wavenumber(31) == -1);
  CHECK(g.index_of(-1) == 31);
}

TEST_CASE("inverse transform agrees with direct series evaluation") {
  const Grid3 g(16);
  const auto f = random_scalar(g, 3, 5);
  const auto phys = to_physical(g, f.component(0));
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> pick(0, 15);
  for (int trial = 0; trial < 6; ++trial) {
    const int i = pick(rng), j = pick(rng), l = pick(rng);
    const double h = g.spacing();
    const double direct = oracle::eval_at(f, 0, {i * h, j * h, l * h});
    CHECK(phys[g.flat(i, j, l)] == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("forward transform is exactly conjugate symmetric and inverts") {
  const Grid3 g(16);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd;
  std::vector<double> x(g.size());
  for (auto& v : x) v = nd(rng);
  const auto c = from_physical(g, x);
  CHECK(conjugate_symmetry_defect(g, c) == 0.0);
  const auto back = to_physical(g, c);
  double err = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) err = std::max(err, std::abs(back[i] - x[i]));
  CHECK(err < 1e-13);
}

TEST_CASE("Parseval with the box normalization") {
  const Grid3 g(16);
  const auto f = random_scalar(g, 5, 5);
  const auto p = to_physical(f);
  double direct = 0.0;
  for (double v : p.comps[0]) direct += v * v;
  direct *= std::pow(g.spacing(), 3);
  CHECK(sobolev_norm_sq(f, 0.0) == doctest::Approx(direct).epsilon(1e-13));
  CHECK(lq_norm(f, 2.0) == doctest::Approx(std::sqrt(direct)).epsilon(1e-13));
}

TEST_CASE("Sobolev norms of a single mode") {
  const Grid3 g(16);
  SpectralScalarField f(g);
  // cos(x1 + 2 x2): |k|^2 = 5, L^2 norm^2 = (2pi)^3 / 2
  f.at(0, g.flat(1, 2, 0)) = 0.5;
  f.at(0, g.flat(g.index_of(-1), g.index_of(-2), 0)) = 0.5;
  const double l2 = kBoxVolume / 2.0;
  CHECK(sobolev_norm_sq(f, 0.0) == doctest::Approx(l2).epsilon(1e-15));
  CHECK(sobolev_norm_sq(f, 1.0) == doctest::Approx(5 * l2).epsilon(1e-15));
  CHECK(sobolev_norm_sq(f, 2.0) == doctest::Approx(25 * l2).epsilon(1e-15));
  CHECK(sobolev_norm_sq(f, -1.0) == doctest::Approx(l2 / 5).epsilon(1e-15));
  CHECK(lq_norm(f, std::numeric_limits<double>::infinity()) == doctest::Approx(1.0).epsilon(1e-14));
  f.at(0, 0) = 1.0;
  CHECK_THROWS_AS(sobolev_norm_sq(f, -0.5), std::invalid_argument);
  CHECK(integral(f) == doctest::Approx(kBoxVolume));
}

TEST_CASE("resampling pads and truncates without loss") {
  const Grid3 g(16);
  const auto f = random_scalar(g, 9, 5);
  const auto up = resample(f, Grid3(32));
  const auto down = resample(up, g);
  CHECK(fixtures::max_abs_diff(down, f) == 0.0);
  CHECK(sobolev_norm_sq(up, 0.0) == doctest::Approx(sobolev_norm_sq(f, 0.0)).epsilon(1e-15));
  CHECK(band_limit(up) == 5);
  CHECK(band_limit(truncate(f, 3)) == 3);
}

namespace {

// Direct convolution of two mode lists.
std::map<Wavevector, Complex> convolve(const SpectralScalarField& a, const SpectralScalarField& b) {
  std::vector<std::pair<Wavevector, Complex>> la, lb;
  for_each_mode(a.grid(), [&](std::size_t m, const Wavevector& k) {
    if (a.at(0, m) != Complex{}) la.push_back({k, a.at(0, m)});
    if (b.at(0, m) != Complex{}) lb.push_back({k, b.at(0, m)});
  });
  std::map<Wavevector, Complex> out;
  for (const auto& [k1, c1] : la)
    for (const auto& [k2, c2] : lb) out[{k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]}] += c1 * c2;
  return out;
}

}  // namespace

TEST_CASE("exact product equals the direct convolution") {
  const Grid3 g(16);
  const auto a = random_scalar(g, 21, 3);
  const auto b = random_scalar(g, 22, 3);
  const auto exact = multiply(a, b, ProductMode::kExact);
  REQUIRE(exact.grid().n() == 32);
  const auto ref = convolve(a, b);
  double scale = 0.0, err = 0.0;
  for (const auto& [k, c] : ref) scale = std::max(scale, std::abs(c));
  for_each_mode(exact.grid(), [&](std::size_t m, const Wavevector& k) {
    const auto it = ref.find(k);
    const Complex want = it == ref.end() ? Complex{} : it->second;
    err = std::max(err, std::abs(exact.at(0, m) - want));
  });
  CHECK(err / scale < 1e-13);

  // Dealiased output keeps the same coefficients below the cutoff.
  const Grid3 gc(16, 5);
  SpectralScalarField a5(gc), b5(gc);
  std::copy(a.component(0).begin(), a.component(0).end(), a5.component(0).begin());
  std::copy(b.component(0).begin(), b.component(0).end(), b5.component(0).begin());
  const auto dealiased = multiply(a5, b5, ProductMode::kDealiased);
  REQUIRE(dealiased.grid() == gc);
  err = 0.0;
  for_each_mode(gc, [&](std::size_t m, const Wavevector& k) {
    const auto it = ref.find(k);
    const Complex want = (it == ref.end() || max_abs_component(k) > 5) ? Complex{} : it->second;
    err = std::max(err, std::abs(dealiased.at(0, m) - want));
  });
  CHECK(err / scale < 1e-13);
}

TEST_CASE("triple product equals iterated convolution") {
  const Grid3 g(16);
  const auto a = random_scalar(g, 31, 2);
  const auto b = random_scalar(g, 32, 2);
  const auto c = random_scalar(g, 33, 2);
  const auto abc = multiply(a, b, c, ProductMode::kExact);
  const auto ab = multiply(a, b, ProductMode::kExact);
  const auto c32 = resample(c, ab.grid());
  const auto ref = convolve(ab, c32);
  double scale = 0.0, err = 0.0;
  for (const auto& [k, v] : ref) scale = std::max(scale, std::abs(v));
  for_each_mode(abc.grid(), [&](std::size_t m, const Wavevector& k) {
    const auto it = ref.find(k);
    err = std::max(err, std::abs(abc.at(0, m) - (it == ref.end() ? Complex{} : it->second)));
  });
  CHECK(err / scale < 1e-13);
}

TEST_CASE("padding factor limits are enforced") {
  const Grid3 g(16);
  const auto a = random_scalar(g, 1, 7);
  const auto b = random_scalar(g, 2, 7);
  CHECK_NOTHROW(multiply(a, b, ProductMode::kExact));
  const auto c = random_scalar(g, 3, 7);
  CHECK_THROWS_WITH_AS(multiply(a, b, c, ProductMode::kExact),
                       doctest::Contains("cutoff too large for padding factor"),
                       std::invalid_argument);
}

TEST_CASE("pairwise summation is order independent for a fixed layout") {
  std::vector<double> v(10007);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  for (auto& x : v) x = u(rng);
  const double s1 = pairwise_sum(0, v.size(), [&](std::size_t i) { return v[i]; });
  const double s2 = pairwise_sum(0, v.size(), [&](std::size_t i) { return v[i]; });
  CHECK(s1 == s2);
  long double naive = 0;
  for (double x : v) naive += x;
  CHECK(s1 == doctest::Approx(static_cast<double>(naive)).epsilon(1e-12));
}
