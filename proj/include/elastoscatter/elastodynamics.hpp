#pragma once

#include <array>
#include <functional>

#include "elastoscatter/types.hpp"

namespace elastoscatter {

/// Isotropic homogeneous medium with unit density.
class Material {
 public:
  /// Throws InvalidArgument unless mu > 0, lambda + 2 mu > 0 and omega > 0.
  Material(double lambda, double mu, double omega);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double omega() const { return omega_; }

  /// P-wave modulus lambda + 2 mu.
  double p_modulus() const { return lambda_ + 2.0 * mu_; }
  double kappa_p() const { return kappa_p_; }
  double kappa_s() const { return kappa_s_; }

 private:
  double lambda_;
  double mu_;
  double omega_;
  double kappa_p_;
  double kappa_s_;
};

struct WaveNumbers {
  double kappa_p;
  double kappa_s;
};

WaveNumbers wave_numbers(const Material& mat);

enum class WaveKind { pressure, shear, full };

struct PlaneWave {
  Vec3 direction;     // unit propagation direction alpha
  Vec3 polarization;  // eta
  WaveKind kind = WaveKind::full;

  PlaneWave(const Vec3& alpha, const Vec3& eta, WaveKind k = WaveKind::full);
};

/// (1/(lambda+2mu)) e^{i kp alpha.x} (alpha.eta) alpha
CVec3 plane_p_wave(const Vec3& x, const PlaneWave& wave, const Material& mat);
/// -(1/mu) e^{i ks alpha.x} alpha x (alpha x eta)
CVec3 plane_s_wave(const Vec3& x, const PlaneWave& wave, const Material& mat);
CVec3 plane_full_wave(const Vec3& x, const PlaneWave& wave, const Material& mat);

/// Dispatches on wave.kind.
CVec3 plane_wave(const Vec3& x, const PlaneWave& wave, const Material& mat);
/// Jacobian J(i,k) = d u_i / d x_k of plane_wave.
CMat3 plane_wave_jacobian(const Vec3& x, const PlaneWave& wave, const Material& mat);

// Strain, stress and traction take the displacement Jacobian J(i,k) = d u_i / d x_k.

template <typename Derived>
CMat3 strain(const Eigen::MatrixBase<Derived>& jacobian) {
  return 0.5 * (jacobian + jacobian.transpose());
}

template <typename Derived>
CMat3 stress(const Material& mat, const Eigen::MatrixBase<Derived>& jacobian) {
  return mat.lambda() * jacobian.trace() * CMat3::Identity() + 2.0 * mat.mu() * strain(jacobian);
}

/// T_nu u = nu . tau(u).
CVec3 traction(const Material& mat, const Vec3& normal, const CMat3& jacobian);

/// Same quantity in the form 2 mu (nu.grad)u + lambda nu div u + mu nu x curl u.
CVec3 traction_curl_form(const Material& mat, const Vec3& normal, const CMat3& jacobian);

/// Which part of the fundamental solution to evaluate. The pressure part is
/// curl-free and the shear part divergence-free; they sum to the full tensor.
enum class KernelPart { full, pressure, shear };

/// Radial profile of the Kupradze tensor, U = psi1(r) I + psi2(r) rhat rhat^T,
/// with r-derivatives.
struct RadialProfile {
  Complex psi1;
  Complex psi2;
  Complex dpsi1;
  Complex dpsi2;
};

RadialProfile kupradze_profile(double r, const Material& mat, KernelPart part = KernelPart::full);

/// Kupradze fundamental tensor U(x, y); throws CoincidenceError when x ~ y.
CMat3 kupradze_tensor(const Vec3& x, const Vec3& y, const Material& mat,
                      KernelPart part = KernelPart::full);

/// Jacobians w.r.t. x of the three columns U(x, y) e_j.
std::array<CMat3, 3> kupradze_gradient(const Vec3& x, const Vec3& y, const Material& mat,
                                       KernelPart part = KernelPart::full);

/// Column j is T_{normal} applied (in x) to U(., y) e_j, evaluated at x.
CMat3 kupradze_traction(const Vec3& x, const Vec3& normal, const Vec3& y, const Material& mat);

using VectorField = std::function<CVec3(const Vec3&)>;

/// Second-order central-difference evaluation of
/// mu Lap u + (lambda + mu) grad div u + omega^2 u.
CVec3 navier_residual_fd(const VectorField& field, const Vec3& x, const Material& mat, double h);

/// Componentwise Laplacian by central differences of order 2 or 4.
CVec3 laplacian_fd(const VectorField& field, const Vec3& x, double h, int order = 4);

/// Jacobian J(i,k) = d u_i / d x_k by fourth-order central differences.
CMat3 jacobian_fd(const VectorField& field, const Vec3& x, double h);

}  // namespace elastoscatter
