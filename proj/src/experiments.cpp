#include "elastoscatter/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "elastoscatter/parallel.hpp"

namespace elastoscatter {

namespace {

struct CapPattern {
  CFields values;
  double residual = 0.0;
  double route_deviation = 0.0;
};

CapPattern cap_pattern(const SystemPtr& system, const PlaneWave& wave, const Points& directions) {
  const auto sol = solve(system, IncidentField::plane(wave));
  CapPattern out;
  out.values = farfield_from_sources(sol, directions).full().values;
  out.residual = sol.residual.relative;

  const auto mesh = std::make_shared<const SurfaceMesh>(system->mesh());
  const auto [tu, ttu] = scattered_traces(sol, mesh);
  double dev = 0.0, scale = 0.0;
  for (Eigen::Index i = 0; i < directions.cols(); ++i) {
    const FarFieldValue v = farfield_boundary_integral(tu, ttu, directions.col(i), system->material());
    dev = std::max(dev, (v.p + v.s - out.values.col(i)).norm());
    scale = std::max(scale, out.values.col(i).norm());
  }
  out.route_deviation = scale > 0.0 ? dev / scale : 0.0;
  return out;
}

}  // namespace

PatternComparison compare_farfields(const SystemPtr& first, const SystemPtr& second, const PlaneWave& wave,
                                    const Vec3& cap_axis, double half_angle, int n_theta, int n_phi) {
  if (!(half_angle > 0.0 && half_angle <= kPi)) throw InvalidArgument("compare_farfields: half_angle must lie in (0, pi]");
  const SphereQuadrature quad(n_theta, n_phi);
  const Vec3 axis = cap_axis.normalized();
  const double min_cos = std::cos(half_angle);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < quad.size(); ++i) {
    if (quad.directions.col(i).dot(axis) >= min_cos) keep.push_back(i);
  }
  if (keep.empty()) throw InvalidArgument("compare_farfields: no grid direction inside the cap");
  const auto n = static_cast<Eigen::Index>(keep.size());
  Points dirs(3, n);
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dirs.col(i) = quad.directions.col(keep[i]);
    w[i] = quad.weights[keep[i]];
  }

  const CapPattern a = cap_pattern(first, wave, dirs);
  const CapPattern b = cap_pattern(second, wave, dirs);

  PatternComparison out;
  out.directions = n;
  double l2 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = (a.values.col(i) - b.values.col(i)).norm();
    out.sup_distance = std::max(out.sup_distance, d);
    out.pattern_scale = std::max({out.pattern_scale, a.values.col(i).norm(), b.values.col(i).norm()});
    l2 += w[i] * d * d;
  }
  out.l2_distance = std::sqrt(l2);
  out.relative_distance = out.pattern_scale > 0.0 ? out.sup_distance / out.pattern_scale : 0.0;
  out.residuals = {a.residual, b.residual};
  out.route_deviations = {a.route_deviation, b.route_deviation};
  out.error_bound = a.residual + a.route_deviation + b.residual + b.route_deviation;
  return out;
}

DifferenceIdentityReport difference_identity(const SystemPtr& first, const SystemPtr& second, const Vec3& x,
                                             const Vec3& y, const Vec3& eta) {
  const bool same = same_geometry(first->shape(), second->shape());
  if (!same && !disjoint(first->shape(), second->shape())) {
    throw GeometryError("difference_identity: obstacles must be identical or disjoint");
  }
  for (const SystemPtr& s : {first, second}) {
    for (const Vec3& p : {x, y}) {
      if (point_classification(s->shape(), p) != PointClass::exterior) {
        throw DomainError("difference_identity: x and y must be exterior to both obstacles");
      }
    }
  }
  if ((x - y).norm() == 0.0) throw CoincidenceError("difference_identity: x and y coincide");

  DifferenceIdentityReport out;
  if (eta.isZero(0.0)) return out;
  out.reference = (kupradze_tensor(x, y, first->material()) * eta.cast<Complex>()).norm();

  // G1(., y) eta and the three columns G2(., x) e_i
  const ScatteringSolution g1 = solve(first, IncidentField::point_source(y, eta));
  std::array<ScatteringSolution, 3> g2{solve(second, IncidentField::point_source(x, Vec3::Unit(0))),
                                       solve(second, IncidentField::point_source(x, Vec3::Unit(1))),
                                       solve(second, IncidentField::point_source(x, Vec3::Unit(2)))};
  out.max_residual = g1.residual.relative;
  for (const auto& s : g2) out.max_residual = std::max(out.max_residual, s.residual.relative);

  // G1(x, y) eta - G2(x, y) eta; the second term by reciprocity as e_i . G2(x, y) eta = (G2(y, x) e_i) . eta
  out.lhs = eval_total(g1, x);
  const CVec3 etac = eta.cast<Complex>();
  for (int i = 0; i < 3; ++i) out.lhs[i] -= (eval_total(g2[i], y).transpose() * etac)(0);

  std::vector<const SurfaceMesh*> meshes{&first->mesh()};
  if (!same) meshes.push_back(&second->mesh());
  for (const SurfaceMesh* mesh : meshes) {
    std::vector<CVec3> partial(static_cast<std::size_t>(mesh->size()));
    parallel_for(partial.size(), [&](std::size_t k) {
      const auto col = static_cast<Eigen::Index>(k);
      const Vec3 w = mesh->nodes.col(col), nu = mesh->normals.col(col);
      const CVec3 u1 = eval_total(g1, w), t1 = eval_total_traction(g1, w, nu);
      CVec3 v;
      for (int i = 0; i < 3; ++i) {
        const CVec3 u2 = eval_total(g2[i], w), t2 = eval_total_traction(g2[i], w, nu);
        v[i] = (t2.transpose() * u1)(0) - (u2.transpose() * t1)(0);
      }
      partial[k] = mesh->weights[col] * v;
    });
    for (const CVec3& v : partial) out.rhs += v;
  }

  const double scale = out.lhs.norm();
  const double lhs_max = out.lhs.cwiseAbs().maxCoeff();
  for (int i = 0; i < 3; ++i) out.componentwise[i] = lhs_max > 0.0 ? std::abs(out.lhs[i] - out.rhs[i]) / lhs_max : 0.0;
  out.mismatch = scale > 0.0 ? (out.lhs - out.rhs).norm() / scale : 0.0;
  return out;
}

}  // namespace elastoscatter
