#include "strainlab/operators.hpp"

#include <algorithm>

#include "strainlab/norms.hpp"

namespace strainlab {
namespace {

using CVec = std::array<Complex, 3>;
constexpr Complex kI{0.0, 1.0};

CVec load(const SpectralVectorField& v, std::size_t m) {
  return {v.at(0, m), v.at(1, m), v.at(2, m)};
}

void store(SpectralVectorField& v, std::size_t m, const CVec& x) {
  for (std::size_t c = 0; c < 3; ++c) v.at(c, m) = x[c];
}

// M k for the stored symmetric tensor M at mode m.
CVec tensor_times(const SymTensorField& s, std::size_t m, const Wavevector& k) {
  CVec out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += s.at(sym_index(i, j), m) * static_cast<double>(k[j]);
  return out;
}

// Stores (scale/2)(k v^T + v k^T).
void store_sym_outer(SymTensorField& s, std::size_t m, const Wavevector& k, const CVec& v,
                     Complex scale) {
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      s.at(sym_index(i, j), m) = 0.5 * scale * (static_cast<double>(k[i]) * v[j] + v[i] * static_cast<double>(k[j]));
}

double dot(const Wavevector& k, const Wavevector& q) {
  return static_cast<double>(k[0]) * q[0] + static_cast<double>(k[1]) * q[1] +
         static_cast<double>(k[2]) * q[2];
}

Complex dot(const Wavevector& k, const CVec& v) {
  return static_cast<double>(k[0]) * v[0] + static_cast<double>(k[1]) * v[1] +
         static_cast<double>(k[2]) * v[2];
}

}  // namespace

SpectralVectorField gradient(const SpectralScalarField& phi) {
  SpectralVectorField out(phi.grid());
  for_each_derivative_mode(phi.grid(), [&](std::size_t m, const Wavevector& k) {
    for (std::size_t c = 0; c < 3; ++c) out.at(c, m) = kI * static_cast<double>(k[c]) * phi.at(0, m);
  });
  return out;
}

SpectralScalarField divergence(const SpectralVectorField& v) {
  SpectralScalarField out(v.grid());
  for_each_derivative_mode(v.grid(), [&](std::size_t m, const Wavevector& k) {
    out.at(0, m) = kI * dot(k, load(v, m));
  });
  return out;
}

SymTensorField sym_grad(const SpectralVectorField& u) {
  SymTensorField out(u.grid());
  for_each_derivative_mode(u.grid(), [&](std::size_t m, const Wavevector& k) {
    store_sym_outer(out, m, k, load(u, m), kI);
  });
  return out;
}

SpectralVectorField curl(const SpectralVectorField& u) {
  SpectralVectorField out(u.grid());
  for_each_derivative_mode(u.grid(), [&](std::size_t m, const Wavevector& k) {
    const CVec v = load(u, m);
    const double k1 = k[0], k2 = k[1], k3 = k[2];
    store(out, m, {kI * (k2 * v[2] - k3 * v[1]), kI * (k3 * v[0] - k1 * v[2]),
                   kI * (k1 * v[1] - k2 * v[0])});
  });
  return out;
}

SpectralVectorField tensor_divergence(const SymTensorField& s) {
  SpectralVectorField out(s.grid());
  for_each_derivative_mode(s.grid(), [&](std::size_t m, const Wavevector& k) {
    const CVec sk = tensor_times(s, m, k);
    store(out, m, {kI * sk[0], kI * sk[1], kI * sk[2]});
  });
  return out;
}

SpectralVectorField leray_project(const SpectralVectorField& v) {
  SpectralVectorField out = v;
  for_each_derivative_mode(v.grid(), [&](std::size_t m, const Wavevector& k) {
    const double k2 = dot(k, k);
    if (k2 == 0.0) return;
    const CVec x = load(v, m);
    const Complex kx = dot(k, x) / k2;
    store(out, m, {x[0] - kx * static_cast<double>(k[0]), x[1] - kx * static_cast<double>(k[1]),
                   x[2] - kx * static_cast<double>(k[2])});
  });
  return out;
}

SymTensorField strain_project(const SymTensorField& mfield) {
  SymTensorField out(mfield.grid());
  for_each_derivative_mode(mfield.grid(), [&](std::size_t m, const Wavevector& k) {
    const double k2 = dot(k, k);
    if (k2 == 0.0) return;  // mean and pure-Nyquist modes leave the strain space
    const CVec mk = tensor_times(mfield, m, k);
    CVec w{-kI * mk[0], -kI * mk[1], -kI * mk[2]};
    const Complex kw = dot(k, w) / k2;
    CVec u{};
    for (int c = 0; c < 3; ++c) u[c] = (2.0 / k2) * (w[c] - kw * static_cast<double>(k[c]));
    store_sym_outer(out, m, k, u, kI);
  });
  return out;
}

double constraint_residual(const SymTensorField& s) {
  const double norm = sobolev_norm_sq(s, 0.0);
  if (norm == 0.0) return 0.0;
  SymTensorField r = s;
  for_each_derivative_mode(s.grid(), [&](std::size_t m, const Wavevector& k) {
    const double k2 = dot(k, k);
    if (k2 == 0.0) return;
    const CVec sk = tensor_times(s, m, k);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        r.at(sym_index(i, j), m) -=
            (static_cast<double>(k[i]) * sk[j] + sk[i] * static_cast<double>(k[j])) / k2;
  });
  return std::sqrt(sobolev_norm_sq(r, 0.0) / norm);
}

SpectralVectorField velocity_from_strain(const SpectralStrainField& s, double tolerance) {
  const double resid = constraint_residual(s);
  if (resid > tolerance)
    throw std::domain_error("velocity_from_strain: strain constraint residual " +
                            std::to_string(resid) + " exceeds tolerance");
  SpectralVectorField u(s.grid());
  for_each_derivative_mode(s.grid(), [&](std::size_t m, const Wavevector& k) {
    const double k2 = dot(k, k);
    if (k2 == 0.0) return;
    const CVec sk = tensor_times(s, m, k);
    store(u, m, {-2.0 * kI * sk[0] / k2, -2.0 * kI * sk[1] / k2, -2.0 * kI * sk[2] / k2});
  });
  return u;
}

SpectralStrainField strain_from_vorticity(const SpectralVectorField& w, double tolerance) {
  const double defect = divergence_defect(w);
  if (defect > tolerance)
    throw std::domain_error("strain_from_vorticity: vorticity is not divergence free (defect " +
                            std::to_string(defect) + ")");
  SpectralVectorField u(w.grid());
  for_each_derivative_mode(w.grid(), [&](std::size_t m, const Wavevector& k) {
    const double k2 = dot(k, k);
    if (k2 == 0.0) return;
    const CVec x = load(w, m);
    const double k1 = k[0], kk2 = k[1], k3 = k[2];
    // u = i k x w / |k|^2 inverts w = i k x u on divergence-free fields.
    store(u, m, {kI * (kk2 * x[2] - k3 * x[1]) / k2, kI * (k3 * x[0] - k1 * x[2]) / k2,
                 kI * (k1 * x[1] - kk2 * x[0]) / k2});
  });
  return sym_grad(u);
}

SpectralVectorField vorticity_from_strain(const SpectralStrainField& s, double tolerance) {
  return curl(velocity_from_strain(s, tolerance));
}

double divergence_defect(const SpectralVectorField& v) {
  double num = 0.0;
  double den = 0.0;
  for_each_derivative_mode(v.grid(), [&](std::size_t m, const Wavevector& k) {
    const CVec x = load(v, m);
    num += std::norm(dot(k, x));
    den += dot(k, k) * (std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]));
  });
  return den == 0.0 ? 0.0 : std::sqrt(num / den);
}

double trace_defect(const SymTensorField& s) {
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t m = 0; m < s.grid().size(); ++m) {
    worst = std::max(worst, std::abs(s.at(0, m) + s.at(3, m) + s.at(5, m)));
    double f = 0.0;
    for (std::size_t c = 0; c < 6; ++c) f += SymTensorField::weight(c) * std::norm(s.at(c, m));
    scale = std::max(scale, std::sqrt(f));
  }
  return scale == 0.0 ? 0.0 : worst / scale;
}

}  // namespace strainlab
