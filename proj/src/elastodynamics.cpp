#include "elastoscatter/elastodynamics.hpp"

#include <cmath>
#include <string>

namespace elastoscatter {

Material::Material(double lambda, double mu, double omega) : lambda_(lambda), mu_(mu), omega_(omega) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("material: mu must be positive");
  if (!(lambda + 2.0 * mu > 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("material: lambda + 2 mu must be positive");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("material: omega must be positive");
  kappa_p_ = omega / std::sqrt(lambda + 2.0 * mu);
  kappa_s_ = omega / std::sqrt(mu);
}

WaveNumbers wave_numbers(const Material& mat) { return {mat.kappa_p(), mat.kappa_s()}; }

PlaneWave::PlaneWave(const Vec3& alpha, const Vec3& eta, WaveKind k)
    : direction(alpha), polarization(eta), kind(k) {
  if (std::abs(alpha.norm() - 1.0) > 1e-12) {
    throw InvalidArgument("plane wave: direction must be a unit vector");
  }
}

CVec3 plane_p_wave(const Vec3& x, const PlaneWave& wave, const Material& mat) {
  const Vec3& a = wave.direction;
  const Complex phase = std::exp(kI * (mat.kappa_p() * a.dot(x)));
  return (phase * (a.dot(wave.polarization) / mat.p_modulus())) * a.cast<Complex>();
}

CVec3 plane_s_wave(const Vec3& x, const PlaneWave& wave, const Material& mat) {
  const Vec3& a = wave.direction;
  const Complex phase = std::exp(kI * (mat.kappa_s() * a.dot(x)));
  const Vec3 pol = -a.cross(a.cross(wave.polarization)) / mat.mu();
  return phase * pol.cast<Complex>();
}

CVec3 plane_full_wave(const Vec3& x, const PlaneWave& wave, const Material& mat) {
  return plane_p_wave(x, wave, mat) + plane_s_wave(x, wave, mat);
}

CVec3 plane_wave(const Vec3& x, const PlaneWave& wave, const Material& mat) {
  switch (wave.kind) {
    case WaveKind::pressure:
      return plane_p_wave(x, wave, mat);
    case WaveKind::shear:
      return plane_s_wave(x, wave, mat);
    case WaveKind::full:
      break;
  }
  return plane_full_wave(x, wave, mat);
}

CMat3 plane_wave_jacobian(const Vec3& x, const PlaneWave& wave, const Material& mat) {
  // each part is amplitude * e^{i kappa alpha.x}; d/dx_k brings down i kappa alpha_k
  const Eigen::RowVector3cd a = wave.direction.transpose().cast<Complex>();
  CMat3 jac = CMat3::Zero();
  if (wave.kind != WaveKind::shear) jac += (kI * mat.kappa_p()) * plane_p_wave(x, wave, mat) * a;
  if (wave.kind != WaveKind::pressure) jac += (kI * mat.kappa_s()) * plane_s_wave(x, wave, mat) * a;
  return jac;
}

CVec3 traction(const Material& mat, const Vec3& normal, const CMat3& jacobian) {
  return stress(mat, jacobian) * normal.cast<Complex>();
}

CVec3 traction_curl_form(const Material& mat, const Vec3& normal, const CMat3& jacobian) {
  const CVec3 nu = normal.cast<Complex>();
  const CVec3 curl(jacobian(2, 1) - jacobian(1, 2), jacobian(0, 2) - jacobian(2, 0),
                   jacobian(1, 0) - jacobian(0, 1));
  const CVec3 directional = jacobian * nu;  // (nu . grad) u
  // written out: Eigen's cross is not reliable for complex operands
  const CVec3 nu_x_curl(nu[1] * curl[2] - nu[2] * curl[1], nu[2] * curl[0] - nu[0] * curl[2],
                        nu[0] * curl[1] - nu[1] * curl[0]);
  return 2.0 * mat.mu() * directional + (mat.lambda() * jacobian.trace()) * nu + mat.mu() * nu_x_curl;
}

namespace {

// Phi(r) = e^{ikr} / (4 pi r) and its first three r-derivatives.
struct HelmholtzRadial {
  Complex f0, f1, f2, f3;
};

HelmholtzRadial helmholtz_radial(double k, double r) {
  const Complex phi = std::exp(kI * (k * r)) / (4.0 * kPi * r);
  const Complex a = kI * k - 1.0 / r;
  const double r2 = r * r;
  const Complex g = a * a + 1.0 / r2;
  const Complex dg = 2.0 * a / r2 - 2.0 / (r2 * r);
  return {phi, phi * a, phi * g, phi * (a * g + dg)};
}

void require_separated(const Vec3& x, const Vec3& y, double r) {
  const double scale = 1.0 + std::max(x.norm(), y.norm());
  if (r < 1e-12 * scale) throw CoincidenceError("kupradze tensor: evaluation point coincides with pole");
}

}  // namespace

RadialProfile kupradze_profile(double r, const Material& mat, KernelPart part) {
  const double w2 = mat.omega() * mat.omega();
  const HelmholtzRadial s = helmholtz_radial(mat.kappa_s(), r);
  const HelmholtzRadial p = helmholtz_radial(mat.kappa_p(), r);
  // U = Phi_s/mu I + (1/w^2) grad grad^T (Phi_s - Phi_p); for radial f,
  // d_i d_j f = f'' rhat_i rhat_j + (f'/r)(delta_ij - rhat_i rhat_j).
  HelmholtzRadial f{};
  Complex iso0 = 0.0;
  Complex iso1 = 0.0;
  switch (part) {
    case KernelPart::full:
      f = {s.f0 - p.f0, s.f1 - p.f1, s.f2 - p.f2, s.f3 - p.f3};
      iso0 = s.f0 / mat.mu();
      iso1 = s.f1 / mat.mu();
      break;
    case KernelPart::shear:
      f = s;
      iso0 = s.f0 / mat.mu();
      iso1 = s.f1 / mat.mu();
      break;
    case KernelPart::pressure:
      f = {-p.f0, -p.f1, -p.f2, -p.f3};
      break;
  }
  RadialProfile out;
  out.psi1 = iso0 + f.f1 / (r * w2);
  out.psi2 = (f.f2 - f.f1 / r) / w2;
  out.dpsi1 = iso1 + (f.f2 / r - f.f1 / (r * r)) / w2;
  out.dpsi2 = (f.f3 - f.f2 / r + f.f1 / (r * r)) / w2;
  return out;
}

CMat3 kupradze_tensor(const Vec3& x, const Vec3& y, const Material& mat, KernelPart part) {
  const Vec3 d = x - y;
  const double r = d.norm();
  require_separated(x, y, r);
  const Vec3 rhat = d / r;
  const RadialProfile prof = kupradze_profile(r, mat, part);
  return prof.psi1 * CMat3::Identity() + prof.psi2 * (rhat * rhat.transpose()).cast<Complex>();
}

std::array<CMat3, 3> kupradze_gradient(const Vec3& x, const Vec3& y, const Material& mat,
                                       KernelPart part) {
  const Vec3 d = x - y;
  const double r = d.norm();
  require_separated(x, y, r);
  const Vec3 e = d / r;
  const RadialProfile prof = kupradze_profile(r, mat, part);
  const Complex c2 = prof.psi2 / r;
  std::array<CMat3, 3> out;
  // d_k U_ij = psi1' e_k d_ij + psi2' e_i e_j e_k + (psi2/r)(d_ik e_j + d_jk e_i - 2 e_i e_j e_k)
  for (int j = 0; j < 3; ++j) {
    CMat3& jac = out[j];
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        Complex v = prof.dpsi2 * (e[i] * e[j] * e[k]) - 2.0 * c2 * (e[i] * e[j] * e[k]);
        if (i == j) v += prof.dpsi1 * e[k];
        if (i == k) v += c2 * e[j];
        if (j == k) v += c2 * e[i];
        jac(i, k) = v;
      }
    }
  }
  return out;
}

CMat3 kupradze_traction(const Vec3& x, const Vec3& normal, const Vec3& y, const Material& mat) {
  const Vec3 d = x - y;
  const double r = d.norm();
  require_separated(x, y, r);
  const Vec3 e = d / r;
  const RadialProfile prof = kupradze_profile(r, mat);
  const Complex c2 = prof.psi2 / r;
  const double en = e.dot(normal);
  // u_j = U e_j has div u_j = (psi1' + psi2' + 2 psi2/r) e_j and
  // (J_j + J_j^T) nu = psi1'(en d_ij + e_i n_j) + 2 psi2' en e_i e_j
  //                  + (psi2/r)(2 n_i e_j + n_j e_i + en d_ij - 4 en e_i e_j).
  const Complex div_coef = prof.dpsi1 + prof.dpsi2 + 2.0 * c2;
  CMat3 out;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      const double dij = (i == j) ? 1.0 : 0.0;
      const Complex sym = prof.dpsi1 * (en * dij + e[i] * normal[j]) + 2.0 * prof.dpsi2 * en * e[i] * e[j] +
                          c2 * (2.0 * normal[i] * e[j] + normal[j] * e[i] + en * dij - 4.0 * en * e[i] * e[j]);
      out(i, j) = mat.lambda() * div_coef * e[j] * normal[i] + mat.mu() * sym;
    }
  }
  return out;
}

CVec3 navier_residual_fd(const VectorField& field, const Vec3& x, const Material& mat, double h) {
  const CVec3 u0 = field(x);
  CVec3 lap = CVec3::Zero();
  CVec3 grad_div = CVec3::Zero();
  std::array<CVec3, 3> up;
  std::array<CVec3, 3> um;
  for (int a = 0; a < 3; ++a) {
    const Vec3 step = h * Vec3::Unit(a);
    up[a] = field(x + step);
    um[a] = field(x - step);
    const CVec3 second = (up[a] - 2.0 * u0 + um[a]) / (h * h);
    lap += second;
    grad_div[a] += second[a];
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const Vec3 ea = h * Vec3::Unit(a);
      const Vec3 eb = h * Vec3::Unit(b);
      const CVec3 mixed =
          (field(x + ea + eb) - field(x + ea - eb) - field(x - ea + eb) + field(x - ea - eb)) / (4.0 * h * h);
      // (grad div u)_a gets d_a d_b u_b, and symmetrically for b
      grad_div[a] += mixed[b];
      grad_div[b] += mixed[a];
    }
  }
  const double w2 = mat.omega() * mat.omega();
  return mat.mu() * lap + (mat.lambda() + mat.mu()) * grad_div + w2 * u0;
}

CVec3 laplacian_fd(const VectorField& field, const Vec3& x, double h, int order) {
  if (order != 2 && order != 4) throw InvalidArgument("laplacian_fd: order must be 2 or 4");
  const CVec3 u0 = field(x);
  CVec3 lap = CVec3::Zero();
  for (int a = 0; a < 3; ++a) {
    const Vec3 e = h * Vec3::Unit(a);
    if (order == 2) {
      lap += (field(x + e) - 2.0 * u0 + field(x - e)) / (h * h);
    } else {
      lap += (-field(x + 2.0 * e) + 16.0 * field(x + e) - 30.0 * u0 + 16.0 * field(x - e) -
              field(x - 2.0 * e)) /
             (12.0 * h * h);
    }
  }
  return lap;
}

CMat3 jacobian_fd(const VectorField& field, const Vec3& x, double h) {
  CMat3 jac;
  for (int k = 0; k < 3; ++k) {
    const Vec3 e = h * Vec3::Unit(k);
    jac.col(k) = (-field(x + 2.0 * e) + 8.0 * field(x + e) - 8.0 * field(x - e) + field(x - 2.0 * e)) /
                 (12.0 * h);
  }
  return jac;
}

}  // namespace elastoscatter
