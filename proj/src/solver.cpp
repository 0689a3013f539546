#include "elastoscatter/solver.hpp"

#include <algorithm>
#include <string>

#include "elastoscatter/parallel.hpp"

namespace elastoscatter {

BoundaryCondition BoundaryCondition::robin(Complex h) {
  if (h.imag() < 0.0) throw InvalidArgument("robin: Im h must be non-negative");
  return {Kind::robin, h};
}

CVec3 apply_boundary(const BoundaryCondition& bc, const Material& mat, const Vec3& normal, const CVec3& value,
                     const CMat3& jacobian) {
  switch (bc.kind) {
    case BoundaryCondition::Kind::dirichlet:
      return value;
    case BoundaryCondition::Kind::neumann:
      return traction(mat, normal, jacobian);
    case BoundaryCondition::Kind::robin:
      break;
  }
  return traction(mat, normal, jacobian) + bc.h * value;
}

IncidentField IncidentField::plane(const PlaneWave& wave) {
  IncidentField f;
  f.kind_ = Kind::plane;
  f.wave_ = wave;
  return f;
}

IncidentField IncidentField::point_source(const Vec3& location, const Vec3& polarization) {
  IncidentField f;
  f.kind_ = Kind::point_source;
  f.location_ = location;
  f.polarization_ = polarization;
  return f;
}

CVec3 IncidentField::value(const Vec3& x, const Material& mat) const {
  if (kind_ == Kind::plane) return plane_wave(x, *wave_, mat);
  return kupradze_tensor(x, location_, mat) * polarization_.cast<Complex>();
}

CMat3 IncidentField::jacobian(const Vec3& x, const Material& mat) const {
  if (kind_ == Kind::plane) return plane_wave_jacobian(x, *wave_, mat);
  const auto grad = kupradze_gradient(x, location_, mat);
  return grad[0] * polarization_[0] + grad[1] * polarization_[1] + grad[2] * polarization_[2];
}

bool IncidentField::is_zero() const {
  const Vec3& eta = (kind_ == Kind::plane) ? wave_->polarization : polarization_;
  return eta.isZero(0.0);
}

namespace {

CMat3 boundary_block(const BoundaryCondition& bc, const Material& mat, const Vec3& y, const Vec3& normal,
                     const Vec3& z) {
  switch (bc.kind) {
    case BoundaryCondition::Kind::dirichlet:
      return kupradze_tensor(y, z, mat);
    case BoundaryCondition::Kind::neumann:
      return kupradze_traction(y, normal, z, mat);
    case BoundaryCondition::Kind::robin:
      break;
  }
  return kupradze_traction(y, normal, z, mat) + bc.h * kupradze_tensor(y, z, mat);
}

Eigen::Map<const Eigen::VectorXcd> flat(const CFields& f) { return {f.data(), f.size()}; }

double max_node_norm(const Eigen::VectorXcd& v) {
  double m = 0.0;
  for (Eigen::Index k = 0; k < v.size() / 3; ++k) m = std::max(m, v.segment<3>(3 * k).norm());
  return m;
}

}  // namespace

CollocationSystem::CollocationSystem(const ObstacleShape& shape, const BoundaryCondition& bc, const Material& mat,
                                     const SolverParams& params)
    : bc_(bc), mat_(mat), params_(params) {
  if (!(params.svd_threshold > 0.0 && params.svd_threshold < 1.0)) {
    throw InvalidArgument("solver: svd_threshold must lie in (0, 1)");
  }
  mesh_ = std::make_shared<const SurfaceMesh>(build_mesh(shape, params.n_theta, params.n_phi));
  held_out_ = std::make_shared<const SurfaceMesh>(build_mesh(shape, params.n_theta, params.n_phi, held_out_rotation()));
  const int count = params.source_count > 0 ? params.source_count : params.n_theta * params.n_phi / 4;
  sources_ = auxiliary_sources(mesh_->shape, count, params.shrink);

  const Eigen::MatrixXcd a = boundary_matrix(*mesh_);
  qr_.compute(a);
  const Eigen::Index n = a.cols();
  const Eigen::MatrixXcd r = qr_.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = params.svd_threshold * s[0];
  rank_ = 0;
  while (rank_ < n && s[rank_] > cutoff) ++rank_;
  if (4 * rank_ < n) {
    throw NumericalError("solver: ill-conditioned collocation system, rank " + std::to_string(rank_) + " of " +
                         std::to_string(n));
  }
  condition_ = s[0] / s[rank_ - 1];
  pinv_r_ = svd.matrixV().leftCols(rank_) * s.head(rank_).cwiseInverse().asDiagonal() *
            svd.matrixU().leftCols(rank_).adjoint();
  held_out_matrix_ = boundary_matrix(*held_out_);
}

Eigen::MatrixXcd CollocationSystem::boundary_matrix(const SurfaceMesh& mesh) const {
  Eigen::MatrixXcd a(3 * mesh.size(), 3 * sources_.cols());
  parallel_for(static_cast<std::size_t>(mesh.size()), [&](std::size_t i) {
    const auto k = static_cast<Eigen::Index>(i);
    for (Eigen::Index m = 0; m < sources_.cols(); ++m) {
      a.block<3, 3>(3 * k, 3 * m) = boundary_block(bc_, mat_, mesh.nodes.col(k), mesh.normals.col(k), sources_.col(m));
    }
  });
  return a;
}

Eigen::VectorXcd CollocationSystem::incident_data(const SurfaceMesh& mesh, const IncidentField& incident) const {
  Eigen::VectorXcd b(3 * mesh.size());
  for (Eigen::Index k = 0; k < mesh.size(); ++k) {
    const Vec3 y = mesh.nodes.col(k);
    const CMat3 jac = (bc_.kind == BoundaryCondition::Kind::dirichlet) ? CMat3::Zero() : incident.jacobian(y, mat_);
    b.segment<3>(3 * k) = apply_boundary(bc_, mat_, mesh.normals.col(k), incident.value(y, mat_), jac);
  }
  return b;
}

CFields CollocationSystem::coefficients(const IncidentField& incident) const {
  const Eigen::VectorXcd b = -incident_data(*mesh_, incident);
  const Eigen::VectorXcd qb = qr_.householderQ().adjoint() * b;
  const Eigen::VectorXcd c = pinv_r_ * qb.head(unknowns());
  return Eigen::Map<const CFields>(c.data(), 3, sources_.cols());
}

Eigen::VectorXcd CollocationSystem::held_out_response(const CFields& coefficients) const {
  return held_out_matrix_ * flat(coefficients);
}

SystemPtr make_system(const ObstacleShape& shape, const BoundaryCondition& bc, const Material& mat,
                      const SolverParams& params) {
  return std::make_shared<const CollocationSystem>(shape, bc, mat, params);
}

ScatteringSolution solve(const SystemPtr& system, const IncidentField& incident) {
  if (incident.kind() == IncidentField::Kind::point_source &&
      point_classification(system->shape(), incident.location()) != PointClass::exterior) {
    throw GeometryError("point source must lie strictly outside the obstacle");
  }
  ScatteringSolution sol{system, incident, system->coefficients(incident), {}};
  const Eigen::VectorXcd inc = system->incident_data(system->held_out_mesh(), incident);
  const Eigen::VectorXcd total = inc + system->held_out_response(sol.coefficients);
  const double ref = max_node_norm(inc);
  sol.residual.max_abs = max_node_norm(total);
  sol.residual.relative = (ref > 0.0) ? sol.residual.max_abs / ref : 0.0;
  return sol;
}

ScatteringSolution solve_exterior(const ObstacleShape& shape, const BoundaryCondition& bc,
                                  const IncidentField& incident, const Material& mat, const SolverParams& params) {
  return solve(make_system(shape, bc, mat, params), incident);
}

namespace {

void require_exterior(const ScatteringSolution& sol, const Vec3& x) {
  if (point_classification(sol.system->shape(), x) == PointClass::interior) {
    throw DomainError("evaluation point inside the obstacle");
  }
}

}  // namespace

CVec3 eval_scattered(const ScatteringSolution& sol, const Vec3& x, KernelPart part) {
  require_exterior(sol, x);
  CVec3 sum = CVec3::Zero();
  for (Eigen::Index m = 0; m < sol.coefficients.cols(); ++m) {
    sum += kupradze_tensor(x, sol.sources().col(m), sol.material(), part) * sol.coefficients.col(m);
  }
  return sum;
}

CMat3 eval_scattered_jacobian(const ScatteringSolution& sol, const Vec3& x, KernelPart part) {
  require_exterior(sol, x);
  CMat3 jac = CMat3::Zero();
  for (Eigen::Index m = 0; m < sol.coefficients.cols(); ++m) {
    const auto grad = kupradze_gradient(x, sol.sources().col(m), sol.material(), part);
    for (int j = 0; j < 3; ++j) jac += grad[j] * sol.coefficients(j, m);
  }
  return jac;
}

CVec3 eval_scattered_traction(const ScatteringSolution& sol, const Vec3& x, const Vec3& normal) {
  require_exterior(sol, x);
  CVec3 sum = CVec3::Zero();
  for (Eigen::Index m = 0; m < sol.coefficients.cols(); ++m) {
    sum += kupradze_traction(x, normal, sol.sources().col(m), sol.material()) * sol.coefficients.col(m);
  }
  return sum;
}

CVec3 eval_total(const ScatteringSolution& sol, const Vec3& x) {
  return sol.incident.value(x, sol.material()) + eval_scattered(sol, x);
}

CVec3 eval_total_traction(const ScatteringSolution& sol, const Vec3& x, const Vec3& normal) {
  return traction(sol.material(), normal, sol.incident.jacobian(x, sol.material())) +
         eval_scattered_traction(sol, x, normal);
}

HelmholtzParts helmholtz_split(const VectorField& field, const Vec3& x, const Material& mat, double h) {
  const double kp2 = mat.kappa_p() * mat.kappa_p(), ks2 = mat.kappa_s() * mat.kappa_s();
  if (kp2 == ks2) throw DomainError("helmholtz_split: kappa_p equals kappa_s");
  const CVec3 lap = laplacian_fd(field, x, h, 4);
  const CVec3 u = field(x);
  return {(lap + ks2 * u) / (ks2 - kp2), (lap + kp2 * u) / (kp2 - ks2)};
}

CVec3 green_tensor_eval(const SystemPtr& system, const Vec3& y, const Vec3& eta, const Vec3& x) {
  return eval_total(solve(system, IncidentField::point_source(y, eta)), x);
}

}  // namespace elastoscatter
