#pragma once

#include <array>
#include <vector>

#include "elastoscatter/layer_potentials.hpp"
#include "elastoscatter/solver.hpp"

namespace elastoscatter {

/// A(x) = x x^T for a unit direction; throws InvalidArgument otherwise.
Mat3 projector(const Vec3& direction);

enum class PatternTag { p_part, s_part, full };

/// Far-field pattern u ~ (e^{i kappa r} / r) pattern, no 1/(4 pi) in the pattern.
struct FarFieldPattern {
  Points directions;
  CFields values;
  PatternTag tag = PatternTag::full;

  Eigen::Index size() const { return directions.cols(); }
};

struct PatternPair {
  FarFieldPattern p;
  FarFieldPattern s;

  FarFieldPattern full() const;
};

/// p(x) = A(x) sum_k e^{-i kp x.z_k} c_k / (4 pi (lambda + 2 mu)),
/// s(x) = (I - A(x)) sum_k e^{-i ks x.z_k} c_k / (4 pi mu).
PatternPair farfield_from_sources(const ScatteringSolution& sol, const Points& directions);

struct FarFieldValue {
  CVec3 p;
  CVec3 s;
};

/// Boundary-integral route from traces of the scattered field and its traction:
///   (kappa^2 / (4 pi omega^2)) int [T_nu(M e^{-i kappa x.y})]^T u - M e^{-i kappa x.y} T u ds
/// with M = A(x) for the p-part and I - A(x) for the s-part.
FarFieldValue farfield_boundary_integral(const SurfaceDensity& trace_u, const SurfaceDensity& trace_tu,
                                         const Vec3& direction, const Material& mat);

/// Traces of the scattered field and its traction on a mesh.
std::pair<SurfaceDensity, SurfaceDensity> scattered_traces(const ScatteringSolution& sol, const MeshPtr& mesh);

/// Far-field matrices for one incidence direction: column j of each matrix is
/// the pattern for polarization e_j of a full plane wave.
struct FarFieldMatrix {
  Vec3 alpha;
  Points directions;
  std::vector<CMat3> p;
  std::vector<CMat3> s;

  CMat3 full(Eigen::Index i) const { return p[i] + s[i]; }
};

FarFieldMatrix farfield_matrix(const SystemPtr& system, const Vec3& alpha, const Points& directions,
                               WaveKind kind = WaveKind::full);

/// {A(x) M A(a), (I - A(x)) M A(a), A(x) M (I - A(a)), (I - A(x)) M (I - A(a))}
std::array<CMat3, 4> split_pattern(const CMat3& m, const Vec3& x, const Vec3& alpha);

/// Product-rule direction grid (theta-major, as SphereQuadrature).
Points direction_grid(int n_theta, int n_phi);

/// Directions of a product grid within `half_angle` radians of `axis`.
Points cap_directions(int n_theta, int n_phi, const Vec3& axis, double half_angle);

struct AsymptoticsRow {
  double sigma;
  double residual;         // max over x of |G eta - expansion|
  double scaled_residual;  // sigma^2 * residual
};

/// Compares G(x, -sigma alpha) eta with
///   e^{i kp sigma}/(4 pi sigma) P(x) + e^{i ks sigma}/(4 pi sigma) S(x)
/// where P, S are total fields for incident p- and s- plane waves.
std::vector<AsymptoticsRow> green_asymptotics_check(const SystemPtr& system, const Vec3& alpha, const Vec3& eta,
                                                    const std::vector<Vec3>& points,
                                                    const std::vector<double>& sigmas);

struct ModeFit {
  ModeIndex mode;
  int component;
  Complex beta_p, gamma_p;
  Complex beta_s, gamma_s;
};

struct RellichOptions {
  int n_theta = 0;           // sphere quadrature; 0 picks 2 (n_max + 4)
  double fd_step = 1e-2;     // helmholtz_split step
};

/// Projects the p- and s- parts of a field on spheres of the given radii onto
/// Y_n^m and fits a(r) = beta h1_n(kappa r) + gamma h2_n(kappa r) by least
/// squares, per mode and Cartesian component.
std::vector<ModeFit> rellich_modes(const VectorField& field, const std::vector<double>& radii, int n_max,
                                   const Material& mat, const RellichOptions& options = {});

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace elastoscatter
