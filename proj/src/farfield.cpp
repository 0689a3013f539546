#include "elastoscatter/farfield.hpp"

#include <cmath>

#include "elastoscatter/parallel.hpp"

namespace elastoscatter {

Mat3 projector(const Vec3& direction) {
  if (std::abs(direction.norm() - 1.0) > 1e-12) throw InvalidArgument("projector: direction must be a unit vector");
  return direction * direction.transpose();
}

FarFieldPattern PatternPair::full() const { return {p.directions, p.values + s.values, PatternTag::full}; }

PatternPair farfield_from_sources(const ScatteringSolution& sol, const Points& directions) {
  const Material& mat = sol.material();
  const Eigen::Index n = directions.cols();
  PatternPair out{{directions, CFields(3, n), PatternTag::p_part}, {directions, CFields(3, n), PatternTag::s_part}};
  const double cp = 1.0 / (4.0 * kPi * mat.p_modulus()), cs = 1.0 / (4.0 * kPi * mat.mu());
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const auto col = static_cast<Eigen::Index>(i);
    const Vec3 xhat = directions.col(col);
    const Mat3 a = projector(xhat);
    CVec3 sum_p = CVec3::Zero(), sum_s = CVec3::Zero();
    for (Eigen::Index k = 0; k < sol.coefficients.cols(); ++k) {
      const double proj = xhat.dot(sol.sources().col(k));
      sum_p += std::exp(-kI * (mat.kappa_p() * proj)) * sol.coefficients.col(k);
      sum_s += std::exp(-kI * (mat.kappa_s() * proj)) * sol.coefficients.col(k);
    }
    out.p.values.col(col) = cp * (a.cast<Complex>() * sum_p);
    out.s.values.col(col) = cs * ((Mat3::Identity() - a).cast<Complex>() * sum_s);
  });
  return out;
}

namespace {

// (kappa^2 / (4 pi omega^2)) int [T(M e^{-i kappa x.y})]^T u - M e^{-i kappa x.y} T u ds
CVec3 projected_integral(const SurfaceDensity& trace_u, const SurfaceDensity& trace_tu, const Vec3& xhat,
                         const Mat3& m, double kappa, const Material& mat) {
  const SurfaceMesh& mesh = *trace_u.mesh;
  const Eigen::RowVector3cd grad_phase = (-kI * kappa) * xhat.transpose().cast<Complex>();
  const CMat3 mc = m.cast<Complex>();
  CVec3 sum = CVec3::Zero();
  for (Eigen::Index k = 0; k < mesh.size(); ++k) {
    const Vec3 y = mesh.nodes.col(k), nu = mesh.normals.col(k);
    const Complex phase = std::exp(-kI * (kappa * xhat.dot(y)));
    CMat3 t;
    for (int j = 0; j < 3; ++j) t.col(j) = traction(mat, nu, CMat3(mc.col(j) * grad_phase));
    sum += mesh.weights[k] * phase * (t.transpose() * trace_u.values.col(k) - mc * trace_tu.values.col(k));
  }
  return (kappa * kappa / (4.0 * kPi * mat.omega() * mat.omega())) * sum;
}

}  // namespace

FarFieldValue farfield_boundary_integral(const SurfaceDensity& trace_u, const SurfaceDensity& trace_tu,
                                         const Vec3& direction, const Material& mat) {
  if (trace_u.mesh != trace_tu.mesh) throw InvalidArgument("farfield_boundary_integral: traces on different meshes");
  const Mat3 a = projector(direction);
  return {projected_integral(trace_u, trace_tu, direction, a, mat.kappa_p(), mat),
          projected_integral(trace_u, trace_tu, direction, Mat3::Identity() - a, mat.kappa_s(), mat)};
}

std::pair<SurfaceDensity, SurfaceDensity> scattered_traces(const ScatteringSolution& sol, const MeshPtr& mesh) {
  CFields u(3, mesh->size()), tu(3, mesh->size());
  parallel_for(static_cast<std::size_t>(mesh->size()), [&](std::size_t i) {
    const auto k = static_cast<Eigen::Index>(i);
    u.col(k) = eval_scattered(sol, mesh->nodes.col(k));
    tu.col(k) = eval_scattered_traction(sol, mesh->nodes.col(k), mesh->normals.col(k));
  });
  return {SurfaceDensity(mesh, std::move(u)), SurfaceDensity(mesh, std::move(tu))};
}

FarFieldMatrix farfield_matrix(const SystemPtr& system, const Vec3& alpha, const Points& directions, WaveKind kind) {
  const Eigen::Index n = directions.cols();
  FarFieldMatrix out{alpha, directions, std::vector<CMat3>(n), std::vector<CMat3>(n)};
  for (int j = 0; j < 3; ++j) {
    const auto sol = solve(system, IncidentField::plane(PlaneWave(alpha, Vec3::Unit(j), kind)));
    const PatternPair pats = farfield_from_sources(sol, directions);
    for (Eigen::Index i = 0; i < n; ++i) {
      out.p[i].col(j) = pats.p.values.col(i);
      out.s[i].col(j) = pats.s.values.col(i);
    }
  }
  return out;
}

std::array<CMat3, 4> split_pattern(const CMat3& m, const Vec3& x, const Vec3& alpha) {
  const CMat3 ax = projector(x).cast<Complex>(), aa = projector(alpha).cast<Complex>();
  const CMat3 id = CMat3::Identity();
  return {ax * m * aa, (id - ax) * m * aa, ax * m * (id - aa), (id - ax) * m * (id - aa)};
}

Points direction_grid(int n_theta, int n_phi) { return SphereQuadrature(n_theta, n_phi).directions; }

Points cap_directions(int n_theta, int n_phi, const Vec3& axis, double half_angle) {
  const Points all = direction_grid(n_theta, n_phi);
  const Vec3 a = axis.normalized();
  const double min_cos = std::cos(half_angle);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < all.cols(); ++i) {
    if (all.col(i).dot(a) >= min_cos) keep.push_back(i);
  }
  Points out(3, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = all.col(keep[i]);
  return out;
}

std::vector<AsymptoticsRow> green_asymptotics_check(const SystemPtr& system, const Vec3& alpha, const Vec3& eta,
                                                    const std::vector<Vec3>& points,
                                                    const std::vector<double>& sigmas) {
  const Material& mat = system->material();
  const auto sol_p = solve(system, IncidentField::plane(PlaneWave(alpha, eta, WaveKind::pressure)));
  const auto sol_s = solve(system, IncidentField::plane(PlaneWave(alpha, eta, WaveKind::shear)));
  std::vector<CVec3> p_total, s_total;
  for (const Vec3& x : points) {
    p_total.push_back(eval_total(sol_p, x));
    s_total.push_back(eval_total(sol_s, x));
  }
  std::vector<AsymptoticsRow> rows;
  for (double sigma : sigmas) {
    const auto sol_g = solve(system, IncidentField::point_source(-sigma * alpha, eta));
    const Complex ep = std::exp(kI * (mat.kappa_p() * sigma)) / (4.0 * kPi * sigma);
    const Complex es = std::exp(kI * (mat.kappa_s() * sigma)) / (4.0 * kPi * sigma);
    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const CVec3 g = eval_total(sol_g, points[i]);
      worst = std::max(worst, (g - ep * p_total[i] - es * s_total[i]).norm());
    }
    rows.push_back({sigma, worst, sigma * sigma * worst});
  }
  return rows;
}

std::vector<ModeFit> rellich_modes(const VectorField& field, const std::vector<double>& radii, int n_max,
                                   const Material& mat, const RellichOptions& options) {
  if (radii.size() < 4) throw InvalidArgument("rellich_modes: need at least four radii");
  if (n_max < 0) throw InvalidArgument("rellich_modes: n_max must be non-negative");
  const int nt = options.n_theta > 0 ? options.n_theta : 2 * (n_max + 4);
  if (nt <= n_max) throw InvalidArgument("rellich_modes: quadrature does not resolve n_max");
  const SphereQuadrature quad(nt, 2 * nt);
  const Eigen::Index nq = quad.size();

  std::vector<ModeIndex> modes;
  for (int n = 0; n <= n_max; ++n)
    for (int m = -n; m <= n; ++m) modes.emplace_back(n, m);
  // conj(Y) * weight, one column per mode
  Eigen::MatrixXcd basis(nq, static_cast<Eigen::Index>(modes.size()));
  for (Eigen::Index q = 0; q < nq; ++q)
    for (std::size_t c = 0; c < modes.size(); ++c)
      basis(q, static_cast<Eigen::Index>(c)) = quad.weights[q] * std::conj(sph_harmonic(modes[c], quad.theta[q], quad.phi[q]));

  // coefficients[r] is (3 * 2) x modes: rows p_x, p_y, p_z, s_x, s_y, s_z
  const Eigen::Index nr = static_cast<Eigen::Index>(radii.size());
  std::vector<Eigen::MatrixXcd> coeffs(radii.size());
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    Eigen::MatrixXcd samples(6, nq);
    parallel_for(static_cast<std::size_t>(nq), [&](std::size_t q) {
      const auto col = static_cast<Eigen::Index>(q);
      const HelmholtzParts parts = helmholtz_split(field, radii[ri] * quad.directions.col(col), mat, options.fd_step);
      samples.col(col) << parts.p, parts.s;
    });
    coeffs[ri] = samples * basis;
  }

  std::vector<ModeFit> fits;
  for (std::size_t c = 0; c < modes.size(); ++c) {
    const int n = modes[c].n;
    Eigen::MatrixXcd design_p(nr, 2), design_s(nr, 2);
    for (Eigen::Index r = 0; r < nr; ++r) {
      design_p(r, 0) = sph_hankel1(n, mat.kappa_p() * radii[r]);
      design_p(r, 1) = sph_hankel2(n, mat.kappa_p() * radii[r]);
      design_s(r, 0) = sph_hankel1(n, mat.kappa_s() * radii[r]);
      design_s(r, 1) = sph_hankel2(n, mat.kappa_s() * radii[r]);
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr_p(design_p), qr_s(design_s);
    for (int comp = 0; comp < 3; ++comp) {
      Eigen::VectorXcd ap(nr), as(nr);
      for (Eigen::Index r = 0; r < nr; ++r) {
        ap[r] = coeffs[r](comp, static_cast<Eigen::Index>(c));
        as[r] = coeffs[r](3 + comp, static_cast<Eigen::Index>(c));
      }
      const Eigen::Vector2cd fp = qr_p.solve(ap), fs = qr_s.solve(as);
      fits.push_back({modes[c], comp, fp[0], fp[1], fs[0], fs[1]});
    }
  }
  return fits;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("loglog_slope: need matching samples");
  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::log(x[i]);
    rhs[i] = std::log(y[i]);
  }
  return design.colPivHouseholderQr().solve(rhs)[1];
}

}  // namespace elastoscatter
