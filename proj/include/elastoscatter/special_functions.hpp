#pragma once

#include <vector>

#include "elastoscatter/types.hpp"

namespace elastoscatter {

struct ModeIndex {
  int n = 0;  // degree
  int m = 0;  // order, |m| <= n

  ModeIndex() = default;
  ModeIndex(int degree, int order);
};

/// Spherical Bessel function of the first kind j_n(x), x > 0.
double sph_bessel_j(int n, double x);

/// Spherical Bessel function of the second kind y_n(x), x > 0.
double sph_bessel_y(int n, double x);

/// h_n^(1)(x) = j_n(x) + i y_n(x).
Complex sph_hankel1(int n, double x);

/// h_n^(2)(x) = j_n(x) - i y_n(x).
Complex sph_hankel2(int n, double x);

/// Associated Legendre function P_n^m(t) for 0 <= m <= n, |t| <= 1,
/// without the Condon-Shortley phase (P_1^1(cos t) = sin t).
double assoc_legendre(int n, int m, double t);

/// Orthonormal spherical harmonic
///   Y_n^m = sqrt((2n+1)/(4 pi) (n-|m|)!/(n+|m|)!) P_n^{|m|}(cos theta) e^{i m phi}.
Complex sph_harmonic(const ModeIndex& mode, double theta, double phi);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1]; nodes ascending.
QuadratureRule gauss_legendre(int n);

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) times the
/// trapezoid rule in phi. Nodes are ordered theta-major (index i*n_phi + j).
struct SphereQuadrature {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<double> theta;  // per node
  std::vector<double> phi;    // per node
  Points directions;          // unit vectors, one column per node
  Eigen::VectorXd weights;    // sum = 4 pi

  SphereQuadrature(int n_theta, int n_phi);

  Eigen::Index size() const { return directions.cols(); }
};

/// Unit vector for polar angle theta and azimuth phi.
inline Vec3 unit_direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace elastoscatter
