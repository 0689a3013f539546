#pragma once

#include <memory>
#include <optional>

#include "elastoscatter/elastodynamics.hpp"
#include "elastoscatter/surface.hpp"

namespace elastoscatter {

/// B1 u = u, B2 u = T u, B3 u = T u + h u with Im h >= 0.
struct BoundaryCondition {
  enum class Kind { dirichlet, neumann, robin };
  Kind kind = Kind::dirichlet;
  Complex h = 0.0;

  static BoundaryCondition dirichlet() { return {}; }
  static BoundaryCondition neumann() { return {Kind::neumann, 0.0}; }
  /// Throws InvalidArgument if Im h < 0.
  static BoundaryCondition robin(Complex h);
};

/// Boundary operator applied to a field given its value and Jacobian at a point.
CVec3 apply_boundary(const BoundaryCondition& bc, const Material& mat, const Vec3& normal, const CVec3& value,
                     const CMat3& jacobian);

/// Plane wave or point source U(x, y) eta located outside the obstacle.
class IncidentField {
 public:
  enum class Kind { plane, point_source };

  static IncidentField plane(const PlaneWave& wave);
  static IncidentField point_source(const Vec3& location, const Vec3& polarization);

  Kind kind() const { return kind_; }
  const PlaneWave& wave() const { return *wave_; }
  const Vec3& location() const { return location_; }
  const Vec3& polarization() const { return polarization_; }

  CVec3 value(const Vec3& x, const Material& mat) const;
  CMat3 jacobian(const Vec3& x, const Material& mat) const;
  bool is_zero() const;

 private:
  Kind kind_ = Kind::plane;
  std::optional<PlaneWave> wave_;
  Vec3 location_ = Vec3::Zero();
  Vec3 polarization_ = Vec3::Zero();
};

struct SolverParams {
  int n_theta = 24;
  int n_phi = 48;
  double shrink = 0.7;
  double svd_threshold = 1e-12;
  int source_count = 0;  // 0: n_theta * n_phi / 4, a 4:1 row to column ratio
};

/// Collocation matrix for one (shape, bc, material, params), factored once:
/// A = Q R by Householder, then R = U S V^* by SVD with singular values below
/// svd_threshold * s_max dropped. Solving for a new incident field only costs
/// a few matrix-vector products.
class CollocationSystem {
 public:
  /// Throws NumericalError if the retained rank is below a quarter of the
  /// unknown count, GeometryError if sources fall outside the obstacle.
  CollocationSystem(const ObstacleShape& shape, const BoundaryCondition& bc, const Material& mat,
                    const SolverParams& params = {});

  const ObstacleShape& shape() const { return mesh_->shape; }
  const BoundaryCondition& bc() const { return bc_; }
  const Material& material() const { return mat_; }
  const SolverParams& params() const { return params_; }
  const SurfaceMesh& mesh() const { return *mesh_; }
  const SurfaceMesh& held_out_mesh() const { return *held_out_; }
  const Points& sources() const { return sources_; }
  Eigen::Index rank() const { return rank_; }
  Eigen::Index unknowns() const { return 3 * sources_.cols(); }
  double condition_estimate() const { return condition_; }

  /// Coefficients (3 x sources) minimizing |A c + B U^i| in least squares.
  CFields coefficients(const IncidentField& incident) const;

  /// Boundary operator of the incident field stacked over the given mesh nodes.
  Eigen::VectorXcd incident_data(const SurfaceMesh& mesh, const IncidentField& incident) const;

  /// Boundary operator of the scattered field at held-out nodes.
  Eigen::VectorXcd held_out_response(const CFields& coefficients) const;

 private:
  Eigen::MatrixXcd boundary_matrix(const SurfaceMesh& mesh) const;

  std::shared_ptr<const SurfaceMesh> mesh_;
  std::shared_ptr<const SurfaceMesh> held_out_;
  BoundaryCondition bc_;
  Material mat_;
  SolverParams params_;
  Points sources_;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr_;
  Eigen::MatrixXcd pinv_r_;  // V S^+ U^* of the truncated R
  Eigen::MatrixXcd held_out_matrix_;
  Eigen::Index rank_ = 0;
  double condition_ = 0.0;
};

using SystemPtr = std::shared_ptr<const CollocationSystem>;

SystemPtr make_system(const ObstacleShape& shape, const BoundaryCondition& bc, const Material& mat,
                      const SolverParams& params = {});

struct ResidualReport {
  double max_abs = 0.0;   // max over held-out nodes of |B U_total|
  double relative = 0.0;  // max_abs / max |B U^i|, 0 for a zero incident field
};

/// Scattered field sum_k U(x, z_k) c_k; radiating by construction.
struct ScatteringSolution {
  SystemPtr system;
  IncidentField incident;
  CFields coefficients;
  ResidualReport residual;

  const Points& sources() const { return system->sources(); }
  const Material& material() const { return system->material(); }
};

ScatteringSolution solve(const SystemPtr& system, const IncidentField& incident);

ScatteringSolution solve_exterior(const ObstacleShape& shape, const BoundaryCondition& bc,
                                  const IncidentField& incident, const Material& mat,
                                  const SolverParams& params = {});

/// Throws DomainError for points inside the obstacle; boundary points allowed.
CVec3 eval_scattered(const ScatteringSolution& sol, const Vec3& x, KernelPart part = KernelPart::full);
CMat3 eval_scattered_jacobian(const ScatteringSolution& sol, const Vec3& x, KernelPart part = KernelPart::full);
CVec3 eval_scattered_traction(const ScatteringSolution& sol, const Vec3& x, const Vec3& normal);

CVec3 eval_total(const ScatteringSolution& sol, const Vec3& x);
CVec3 eval_total_traction(const ScatteringSolution& sol, const Vec3& x, const Vec3& normal);

struct HelmholtzParts {
  CVec3 p;
  CVec3 s;
};

/// u_p = (Lap + ks^2) u / (ks^2 - kp^2), u_s = (Lap + kp^2) u / (kp^2 - ks^2)
/// with a fourth-order finite-difference Laplacian of step h.
HelmholtzParts helmholtz_split(const VectorField& field, const Vec3& x, const Material& mat, double h);

/// G(x, y) eta = U(x, y) eta plus the scattered field of the point source at y.
CVec3 green_tensor_eval(const SystemPtr& system, const Vec3& y, const Vec3& eta, const Vec3& x);

}  // namespace elastoscatter
