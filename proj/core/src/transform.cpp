#include "strainlab/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace strainlab {
namespace {

// FFTW plans are created once per grid size. Planning is not thread safe, so
// the cache is guarded; execution through the new-array interface is.
class PlanPair {
 public:
  explicit PlanPair(int n) : n_(n) {
    const std::size_t total = static_cast<std::size_t>(n) * n * n;
    const std::size_t half = static_cast<std::size_t>(n) * n * (n / 2 + 1);
    double* real = fftw_alloc_real(total);
    fftw_complex* spec = fftw_alloc_complex(half);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_dft_r2c_3d(n, n, n, real, spec, flags);
    backward_ = fftw_plan_dft_c2r_3d(n, n, n, spec, real, flags);
    fftw_free(real);
    fftw_free(spec);
    if (forward_ == nullptr || backward_ == nullptr)
      throw std::runtime_error("FFTW planning failed");
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;
  ~PlanPair() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  void forward(double* in, fftw_complex* out) const { fftw_execute_dft_r2c(forward_, in, out); }
  void backward(fftw_complex* in, double* out) const { fftw_execute_dft_c2r(backward_, in, out); }

 private:
  int n_;
  fftw_plan forward_{};
  fftw_plan backward_{};
};

const PlanPair& plans_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<PlanPair>(n);
  return *slot;
}

void check_size(const Grid3& grid, std::size_t got) {
  if (got != grid.size())
    throw std::invalid_argument("transform size mismatch: expected " +
                                std::to_string(grid.size()) + " values, got " +
                                std::to_string(got));
}

}  // namespace

std::vector<double> to_physical(const Grid3& grid, std::span<const Complex> coeffs) {
  check_size(grid, coeffs.size());
  const int n = grid.n();
  const int nh = n / 2 + 1;
  std::vector<Complex> half(grid.half_size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      std::copy_n(coeffs.begin() + static_cast<std::ptrdiff_t>(grid.flat(i, j, 0)), nh,
                  half.begin() + (static_cast<std::ptrdiff_t>(i) * n + j) * nh);
  std::vector<double> out(grid.size());
  plans_for(n).backward(reinterpret_cast<fftw_complex*>(half.data()), out.data());
  return out;
}

std::vector<Complex> from_physical(const Grid3& grid, std::span<const double> samples) {
  check_size(grid, samples.size());
  const int n = grid.n();
  const int nh = n / 2 + 1;
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<Complex> half(grid.half_size());
  plans_for(n).forward(in.data(), reinterpret_cast<fftw_complex*>(half.data()));
  const double scale = 1.0 / static_cast<double>(grid.size());
  std::vector<Complex> out(grid.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex* row = half.data() + (static_cast<std::size_t>(i) * n + j) * nh;
      for (int l = 0; l < nh; ++l) out[grid.flat(i, j, l)] = row[l] * scale;
    }
  }
  // Upper half in the last index from conjugate symmetry.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = nh; l < n; ++l)
        out[grid.flat(i, j, l)] = std::conj(out[grid.conjugate_flat(i, j, l)]);
  return out;
}

void resample_component(const Grid3& from, std::span<const Complex> src, const Grid3& to,
                        std::span<Complex> dst) {
  check_size(from, src.size());
  check_size(to, dst.size());
  std::fill(dst.begin(), dst.end(), Complex{});
  const int limit = std::min(from.n(), to.n()) / 2;  // keep |k_i| < limit
  for (int k1 = -limit + 1; k1 < limit; ++k1)
    for (int k2 = -limit + 1; k2 < limit; ++k2)
      for (int k3 = -limit + 1; k3 < limit; ++k3)
        dst[to.flat(to.index_of(k1), to.index_of(k2), to.index_of(k3))] =
            src[from.flat(from.index_of(k1), from.index_of(k2), from.index_of(k3))];
}

int band_limit(const Grid3& grid, std::span<const Complex> coeffs) {
  check_size(grid, coeffs.size());
  int band = 0;
  for_each_mode(grid, [&](std::size_t m, const Wavevector& k) {
    if (coeffs[m] != Complex{}) band = std::max(band, max_abs_component(k));
  });
  return band;
}

double conjugate_symmetry_defect(const Grid3& grid, std::span<const Complex> coeffs) {
  check_size(grid, coeffs.size());
  double worst = 0.0;
  double scale = 0.0;
  const int n = grid.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        const Complex a = coeffs[grid.flat(i, j, l)];
        const Complex b = coeffs[grid.conjugate_flat(i, j, l)];
        worst = std::max(worst, std::abs(a - std::conj(b)));
        scale = std::max(scale, std::abs(a));
      }
  return scale > 0.0 ? worst / scale : 0.0;
}

}  // namespace strainlab
