#include "elastoscatter/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "elastoscatter/parallel.hpp"

namespace elastoscatter {

Check check_below(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, Check::Relation::below, 0.0, value < tolerance};
}

Check check_above(std::string name, double value, double tolerance) {
  return {std::move(name), value, tolerance, Check::Relation::above, 0.0, value > tolerance};
}

Check check_within(std::string name, double value, double target, double tolerance) {
  return {std::move(name), value, tolerance, Check::Relation::within, target, std::abs(value - target) <= tolerance};
}

bool all_pass(const Checks& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void append(Checks& to, const Checks& from) { to.insert(to.end(), from.begin(), from.end()); }

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vec3 v;
  do {
    v = Vec3(normal(rng), normal(rng), normal(rng));
  } while (v.norm() < 1e-3);
  return v.normalized();
}

double max_rel(const CFields& a, const CFields& b) {
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    num = std::max(num, (a.col(i) - b.col(i)).norm());
    den = std::max(den, b.col(i).norm());
  }
  return den > 0.0 ? num / den : num;
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  return out;
}

// Point at `factor` bounding radii from the center along a unit direction.
Vec3 outside(const ObstacleShape& shape, const Vec3& dir, double factor) {
  return shape.center() + factor * shape.bounding_radius() * dir.normalized();
}

}  // namespace

Checks kernel_symmetry_checks(const Material& mat, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  double transpose = 0.0, swap = 0.0;
  for (int i = 0; i < pairs; ++i) {
    Vec3 x, y;
    do {
      x = Vec3(coord(rng), coord(rng), coord(rng));
      y = Vec3(coord(rng), coord(rng), coord(rng));
    } while ((x - y).norm() < 0.1);
    const CMat3 u = kupradze_tensor(x, y, mat);
    transpose = std::max(transpose, (u - u.transpose()).norm() / u.norm());
    swap = std::max(swap, (u - kupradze_tensor(y, x, mat)).norm() / u.norm());
  }
  return {check_below("kupradze transpose symmetry", transpose, 1e-13),
          check_below("kupradze argument swap symmetry", swap, 1e-13)};
}

Checks kernel_navier_checks(const Material& mat) {
  const Vec3 y(0.1, -0.2, 0.3);
  const Vec3 x = y + Vec3(0.48, 0.6, 0.64);
  const double h = 0.02;
  Checks out;
  for (int j = 0; j < 3; ++j) {
    const VectorField col = [&, j](const Vec3& p) -> CVec3 { return kupradze_tensor(p, y, mat).col(j); };
    const double e1 = navier_residual_fd(col, x, mat, h).norm();
    const double e2 = navier_residual_fd(col, x, mat, h / 2).norm();
    out.push_back(check_within("navier residual order, column " + std::to_string(j), std::log2(e1 / e2), 2.0, 0.2));
  }
  return out;
}

Checks traction_form_checks(const Material& mat, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    CMat3 jac;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) jac(r, c) = Complex(normal(rng), normal(rng));
    const Vec3 nu = random_unit(rng);
    const CVec3 a = traction(mat, nu, jac), b = traction_curl_form(mat, nu, jac);
    worst = std::max(worst, (a - b).norm() / a.norm());
  }
  return {check_below("traction forms agree", worst, 1e-13)};
}

Checks plane_wave_checks(const Material& mat, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  double parallel = 0.0, orthogonal = 0.0, residual = 0.0;
  for (int i = 0; i < 20; ++i) {
    const PlaneWave wave(random_unit(rng), random_unit(rng));
    const Vec3 x(coord(rng), coord(rng), coord(rng));
    const Vec3& a = wave.direction;
    const CVec3 p = plane_p_wave(x, wave, mat), s = plane_s_wave(x, wave, mat);
    const CVec3 ac = a.cast<Complex>();
    const CVec3 cross(ac[1] * p[2] - ac[2] * p[1], ac[2] * p[0] - ac[0] * p[2], ac[0] * p[1] - ac[1] * p[0]);
    parallel = std::max(parallel, cross.norm() / p.norm());
    orthogonal = std::max(orthogonal, std::abs((ac.transpose() * s)(0)) / s.norm());
    const VectorField u = [&](const Vec3& q) { return plane_full_wave(q, wave, mat); };
    const double scale = mat.omega() * mat.omega() * u(x).norm();
    residual = std::max(residual, navier_residual_fd(u, x, mat, 5e-4).norm() / scale);
  }
  const Vec3 x(0.3, -0.4, 0.5);
  const PlaneWave transverse(Vec3(0, 0, 1), Vec3(1.0, 0.5, 0.0));
  const Vec3 a = Vec3(1, 2, 2) / 3.0;
  const PlaneWave longitudinal(a, 2.0 * a);
  return {check_below("P part parallel to alpha", parallel, 1e-14),
          check_below("S part orthogonal to alpha", orthogonal, 1e-14),
          check_below("plane wave Navier FD residual", residual, 1e-6),
          check_within("alpha.eta = 0: |P|", plane_p_wave(x, transverse, mat).norm(), 0.0, 0.0),
          check_above("alpha.eta = 0: |S|", plane_s_wave(x, transverse, mat).norm(), 0.0),
          check_within("alpha x eta = 0: |S|", plane_s_wave(x, longitudinal, mat).norm(), 0.0, 0.0),
          check_above("alpha x eta = 0: |P|", plane_p_wave(x, longitudinal, mat).norm(), 0.0)};
}

Checks jump_checks(const Material& mat, const std::vector<int>& n_thetas, const std::vector<double>& offsets) {
  Checks out;
  std::vector<double> errors;
  for (int nt : n_thetas) {
    const auto mesh = std::make_shared<const SurfaceMesh>(build_mesh(ObstacleShape::sphere(1.0), nt, 2 * nt));
    const SurfaceDensity phi(mesh, mesh->normals.cast<Complex>());
    std::vector<double> err(static_cast<std::size_t>(mesh->size()));
    parallel_for(err.size(), [&](std::size_t k) {
      const auto node = static_cast<Eigen::Index>(k);
      err[k] = (jump_estimate(phi, node, offsets, mat) - phi.values.col(node)).squaredNorm();
    });
    double num = 0.0, den = 0.0;
    for (Eigen::Index k = 0; k < mesh->size(); ++k) {
      num += mesh->weights[k] * err[static_cast<std::size_t>(k)];
      den += mesh->weights[k] * phi.values.col(k).squaredNorm();
    }
    errors.push_back(std::sqrt(num / den));
    out.push_back(check_below("jump relation error at " + std::to_string(nt) + "x" + std::to_string(2 * nt),
                              errors.back(), 5e-2));
  }
  if (errors.size() >= 2) {
    out.push_back(check_above("jump relation refinement gain", errors.front() / errors.back(), 2.0));
  }
  return out;
}

Checks single_layer_checks(const Material& mat, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto mesh = std::make_shared<const SurfaceMesh>(build_mesh(ObstacleShape::sphere(1.0), 16, 32));
  const Vec3 a = random_unit(rng), b = random_unit(rng);
  CFields f1(3, mesh->size()), f2(3, mesh->size());
  for (Eigen::Index k = 0; k < mesh->size(); ++k) {
    const Vec3 y = mesh->nodes.col(k);
    f1.col(k) = std::exp(kI * a.dot(y)) * b.cast<Complex>();
    f2.col(k) = y.cast<Complex>() * Complex(std::cos(y[2]), y[0]);
  }
  const Complex c1(0.7, -1.2), c2(-0.3, 0.4);
  const SurfaceDensity d1(mesh, f1), d2(mesh, f2), d12(mesh, c1 * f1 + c2 * f2);
  const Vec3 x(0.4, 1.1, 1.3);
  const CVec3 lhs = single_layer(d12, x, mat);
  const CVec3 rhs = c1 * single_layer(d1, x, mat) + c2 * single_layer(d2, x, mat);

  const Vec3 dir = random_unit(rng);
  std::vector<double> radii = log_spaced(10.0, 100.0, 5), mags;
  for (double r : radii) mags.push_back(single_layer(d1, r * dir, mat).norm());

  const VectorField v = [&](const Vec3& p) { return single_layer(d1, p, mat); };
  const Vec3 near = 1.5 * dir;
  const double residual = navier_residual_fd(v, near, mat, 5e-4).norm() / (mat.omega() * mat.omega() * v(near).norm());
  const CVec3 t = single_layer_traction(d1, near, dir, mat);
  const CVec3 t_fd = traction(mat, dir, jacobian_fd(v, near, 1e-3));
  return {check_below("single layer linearity", (lhs - rhs).norm() / rhs.norm(), 1e-13),
          check_within("single layer decay slope", loglog_slope(radii, mags), -1.0, 0.05),
          check_below("single layer Navier FD residual", residual, 1e-5),
          check_below("single layer traction vs FD", (t - t_fd).norm() / t.norm(), 1e-6)};
}

Checks solver_residual_checks(const ObstacleShape& shape, const Material& mat, const SolverParams& params,
                              const PlaneWave& wave, double seconds_per_solve) {
  struct Case {
    const char* name;
    BoundaryCondition bc;
    double tol;
  };
  const Case cases[] = {{"dirichlet", BoundaryCondition::dirichlet(), 1e-6},
                        {"neumann", BoundaryCondition::neumann(), 1e-4},
                        {"robin(h=i)", BoundaryCondition::robin(kI), 1e-4}};
  Checks out;
  for (const Case& c : cases) {
    const auto start = Clock::now();
    const auto sol = solve(make_system(shape, c.bc, mat, params), IncidentField::plane(wave));
    const double t = seconds_since(start);
    out.push_back(check_below(std::string("held-out residual, ") + c.name, sol.residual.relative, c.tol));
    out.push_back(check_below(std::string("solve seconds, ") + c.name, t, seconds_per_solve));
  }
  return out;
}

Checks solver_property_checks(const SystemPtr& system, const PlaneWave& wave) {
  const Material& mat = system->material();
  const ObstacleShape& shape = system->shape();
  Checks out;

  const auto zero = solve(system, IncidentField::plane(PlaneWave(wave.direction, Vec3::Zero(), wave.kind)));
  const double zmax = zero.coefficients.cwiseAbs().maxCoeff();
  out.push_back(check_within("zero incident gives zero coefficients", zmax, 0.0, 0.0));

  const Vec3 e1(0.3, -0.8, 0.5), e2(-0.6, 0.1, 0.9);
  const auto s1 = solve(system, IncidentField::plane(PlaneWave(wave.direction, e1, wave.kind)));
  const auto s2 = solve(system, IncidentField::plane(PlaneWave(wave.direction, e2, wave.kind)));
  const auto s12 = solve(system, IncidentField::plane(PlaneWave(wave.direction, e1 + e2, wave.kind)));
  out.push_back(check_below("linearity in eta", max_rel(s12.coefficients, s1.coefficients + s2.coefficients), 1e-10));

  const auto sol = solve(system, IncidentField::plane(wave));
  const VectorField u = [&](const Vec3& p) { return eval_scattered(sol, p); };
  const Vec3 x3 = outside(shape, Vec3::UnitZ(), 3.0);
  const double res = navier_residual_fd(u, x3, mat, 5e-4).norm() / (mat.omega() * mat.omega() * u(x3).norm());
  out.push_back(check_below("scattered Navier FD residual", res, 1e-6));

  const Vec3 dir = Vec3(1, 2, 2) / 3.0;
  const std::vector<double> radii = log_spaced(20.0, 200.0, 6);
  for (const auto& [part, kappa, label] : {std::tuple{KernelPart::pressure, mat.kappa_p(), "p"},
                                           std::tuple{KernelPart::shear, mat.kappa_s(), "s"}}) {
    std::vector<double> vals;
    for (double r : radii) {
      const Vec3 x = shape.center() + r * dir;
      const CVec3 dudr = eval_scattered_jacobian(sol, x, part) * dir.cast<Complex>();
      vals.push_back((r * (dudr - kI * kappa * eval_scattered(sol, x, part))).norm());
    }
    out.push_back(check_below(std::string("radiation condition slope, ") + label, loglog_slope(radii, vals), -0.9));
  }

  const Vec3 x4 = outside(shape, Vec3::UnitZ(), 4.0);
  const HelmholtzParts parts = helmholtz_split(u, x4, mat, 1e-2);
  out.push_back(check_below("helmholtz split sums to field", (parts.p + parts.s - u(x4)).norm() / u(x4).norm(), 1e-6));

  const SphereQuadrature quad(16, 32);
  std::vector<double> energy;
  for (double r : {10.0, 20.0, 30.0, 40.0, 50.0}) {
    double e = 0.0;
    for (Eigen::Index q = 0; q < quad.size(); ++q) {
      e += quad.weights[q] * r * r * u(shape.center() + r * quad.directions.col(q)).squaredNorm();
    }
    energy.push_back(e);
  }
  const auto [lo, hi] = std::minmax_element(energy.begin(), energy.end());
  out.push_back(check_above("far energy bounded away from zero", *lo / *hi, 0.5));
  return out;
}

Checks betti_checks(const SystemPtr& system, const PlaneWave& wave, const std::vector<Vec3>& points) {
  const auto sol = solve(system, IncidentField::plane(wave));
  const auto mesh = std::make_shared<const SurfaceMesh>(build_mesh(system->shape(), 32, 64));
  const auto [tu, ttu] = scattered_traces(sol, mesh);
  double worst = 0.0;
  for (const Vec3& x : points) {
    const CVec3 direct = eval_scattered(sol, x);
    worst = std::max(worst, (betti_representation(tu, ttu, x, system->material()) - direct).norm() / direct.norm());
  }
  return {check_below("betti reproduction of scattered field", worst, 1e-3)};
}

Checks green_checks(const SystemPtr& system, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> factor(1.5, 3.0);
  const ObstacleShape& shape = system->shape();
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const Vec3 x = outside(shape, random_unit(rng), factor(rng));
    const Vec3 y = outside(shape, random_unit(rng), factor(rng));
    const Vec3 eta1 = random_unit(rng), eta2 = random_unit(rng);
    const Complex a = (eta2.cast<Complex>().transpose() * green_tensor_eval(system, y, eta1, x))(0);
    const Complex b = (eta1.cast<Complex>().transpose() * green_tensor_eval(system, x, eta2, y))(0);
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
  }
  const auto g = solve(system, IncidentField::point_source(outside(shape, Vec3(0.2, -0.3, 1.0), 2.5), Vec3(1, 0, 0)));
  return {check_below("green tensor reciprocity", worst, 1e-4),
          check_below("green tensor boundary value", g.residual.relative, 1e-5)};
}

Checks farfield_route_checks(const SystemPtr& system, const PlaneWave& wave) {
  const Material& mat = system->material();
  const auto sol = solve(system, IncidentField::plane(wave));
  const Points dirs = direction_grid(12, 24);
  const PatternPair pats = farfield_from_sources(sol, dirs);
  const auto mesh = std::make_shared<const SurfaceMesh>(system->mesh());
  const auto [tu, ttu] = scattered_traces(sol, mesh);
  CFields integral(3, dirs.cols());
  parallel_for(static_cast<std::size_t>(dirs.cols()), [&](std::size_t i) {
    const auto col = static_cast<Eigen::Index>(i);
    const FarFieldValue v = farfield_boundary_integral(tu, ttu, dirs.col(col), mat);
    integral.col(col) = v.p + v.s;
  });
  Checks out{check_below("far-field routes agree", max_rel(integral, pats.full().values), 1e-3)};

  // the pattern refers to the origin
  const Vec3 xhat = Vec3(1, 2, 2) / 3.0;
  Points one(3, 1);
  one.col(0) = xhat;
  const PatternPair lim = farfield_from_sources(sol, one);
  const std::vector<double> radii = log_spaced(20.0, 320.0, 5);
  std::vector<double> ep, es;
  for (double r : radii) {
    const Vec3 x = r * xhat;
    ep.push_back((r * std::exp(-kI * (mat.kappa_p() * r)) * eval_scattered(sol, x, KernelPart::pressure) -
                  lim.p.values.col(0)).norm());
    es.push_back((r * std::exp(-kI * (mat.kappa_s() * r)) * eval_scattered(sol, x, KernelPart::shear) -
                  lim.s.values.col(0)).norm());
  }
  out.push_back(check_within("p-part remainder slope", loglog_slope(radii, ep), -1.0, 0.1));
  out.push_back(check_within("s-part remainder slope", loglog_slope(radii, es), -1.0, 0.1));
  return out;
}

Checks farfield_structure_checks(const SystemPtr& system, const Vec3& alpha) {
  const Points dirs = direction_grid(12, 24);
  const Vec3 eta = Vec3(1, 0, 1).normalized();
  const auto sol = solve(system, IncidentField::plane(PlaneWave(alpha, eta)));
  const PatternPair pats = farfield_from_sources(sol, dirs);
  double par = 0.0, orth = 0.0;
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    const CVec3 xh = dirs.col(i).cast<Complex>();
    const CVec3 p = pats.p.values.col(i), s = pats.s.values.col(i);
    if (p.norm() > 0.0) par = std::max(par, (p - xh * (xh.transpose() * p)(0)).norm() / p.norm());
    if (s.norm() > 0.0) orth = std::max(orth, std::abs((xh.transpose() * s)(0)) / s.norm());
  }
  Checks out{check_below("p pattern parallel to direction", par, 1e-10),
             check_below("s pattern tangential", orth, 1e-10)};

  const FarFieldMatrix full = farfield_matrix(system, alpha, dirs);
  const FarFieldMatrix pm = farfield_matrix(system, alpha, dirs, WaveKind::pressure);
  const FarFieldMatrix sm = farfield_matrix(system, alpha, dirs, WaveKind::shear);
  const CVec3 etac = eta.cast<Complex>();
  CFields applied(3, dirs.cols()), decomposed(3, dirs.cols());
  double split = 0.0;
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    const CMat3 m = full.full(i);
    applied.col(i) = m * etac;
    decomposed.col(i) = (pm.full(i) + sm.full(i)) * etac;
    const auto blocks = split_pattern(m, dirs.col(i), alpha);
    split = std::max(split, (blocks[0] + blocks[1] + blocks[2] + blocks[3] - m).norm() / std::max(m.norm(), 1e-300));
  }
  out.push_back(check_below("matrix applied to eta matches direct solve", max_rel(applied, pats.full().values), 1e-10));
  out.push_back(check_below("U eta = P eta + S eta", max_rel(decomposed, applied), 1e-4));
  out.push_back(check_below("four-block split reassembles", split, 1e-14));
  return out;
}

Checks green_asymptotics_checks(const SystemPtr& system, const Vec3& alpha, const Vec3& eta,
                                const std::vector<double>& sigmas) {
  const ObstacleShape& shape = system->shape();
  const std::vector<Vec3> points{outside(shape, Vec3(1, 0, 0), 2.0), outside(shape, Vec3(0, 2, 1), 2.0),
                                 outside(shape, Vec3(1, 1, -2), 2.0)};
  const auto rows = green_asymptotics_check(system, alpha, eta, points, sigmas);
  Checks out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    out.push_back(check_within("scaled residual ratio sigma=" + std::to_string(static_cast<int>(rows[i].sigma)),
                               rows[i].scaled_residual / rows[i - 1].scaled_residual, 1.0, 0.3));
  }
  return out;
}

Checks rellich_synthetic_checks(const Material& mat) {
  const std::vector<double> radii = log_spaced(10.0, 80.0, 6);
  const double y00 = std::sqrt(4.0 * kPi);
  auto monopole = [&](double kappa, bool outgoing) -> VectorField {
    return [=](const Vec3& x) -> CVec3 {
      const double r = x.norm();
      const Complex h = outgoing ? sph_hankel1(0, kappa * r) : sph_hankel2(0, kappa * r);
      return CVec3(h, 0.0, 0.0);
    };
  };
  auto mode0 = [](const std::vector<ModeFit>& fits) {
    for (const ModeFit& f : fits)
      if (f.mode.n == 0 && f.component == 0) return f;
    throw NumericalError("rellich: mode (0, 0) missing");
  };
  Checks out;
  const ModeFit s_out = mode0(rellich_modes(monopole(mat.kappa_s(), true), radii, 2, mat));
  out.push_back(check_below("outgoing s monopole: beta error", std::abs(s_out.beta_s - y00) / y00, 1e-8));
  out.push_back(check_below("outgoing s monopole: gamma leakage", std::abs(s_out.gamma_s) / y00, 1e-8));
  out.push_back(check_below("outgoing s monopole: p-branch leakage",
                            std::max(std::abs(s_out.beta_p), std::abs(s_out.gamma_p)) / y00, 1e-8));
  const ModeFit p_out = mode0(rellich_modes(monopole(mat.kappa_p(), true), radii, 2, mat));
  out.push_back(check_below("outgoing p monopole: beta error", std::abs(p_out.beta_p - y00) / y00, 1e-8));
  out.push_back(check_below("outgoing p monopole: gamma leakage", std::abs(p_out.gamma_p) / y00, 1e-8));
  const ModeFit s_in = mode0(rellich_modes(monopole(mat.kappa_s(), false), radii, 2, mat));
  out.push_back(check_below("incoming s monopole: gamma error", std::abs(s_in.gamma_s - y00) / y00, 1e-8));
  out.push_back(check_below("incoming s monopole: beta leakage", std::abs(s_in.beta_s) / y00, 1e-8));

  const VectorField zero = [](const Vec3&) { return CVec3::Zero().eval(); };
  double zmax = 0.0;
  for (const ModeFit& f : rellich_modes(zero, radii, 2, mat)) {
    zmax = std::max({zmax, std::abs(f.beta_p), std::abs(f.gamma_p), std::abs(f.beta_s), std::abs(f.gamma_s)});
  }
  out.push_back(check_within("zero field: all coefficients", zmax, 0.0, 0.0));
  return out;
}

Checks rellich_purity_checks(const SystemPtr& system, const PlaneWave& wave) {
  const auto sol = solve(system, IncidentField::plane(wave));
  const Vec3 c = system->shape().center();
  const VectorField u = [&](const Vec3& x) { return eval_scattered(sol, c + x); };
  const auto fits = rellich_modes(u, log_spaced(10.0, 80.0, 6), 4, system->material());
  double bmax = 0.0;
  for (const ModeFit& f : fits) bmax = std::max({bmax, std::abs(f.beta_p), std::abs(f.beta_s)});
  double worst = 0.0;
  for (const ModeFit& f : fits) {
    if (std::abs(f.beta_p) > 1e-6 * bmax) worst = std::max(worst, std::abs(f.gamma_p) / std::abs(f.beta_p));
    if (std::abs(f.beta_s) > 1e-6 * bmax) worst = std::max(worst, std::abs(f.gamma_s) / std::abs(f.beta_s));
  }
  return {check_above("scattered field has outgoing modes", bmax, 0.0),
          check_below("outgoing purity |gamma|/|beta|", worst, 1e-2)};
}

}  // namespace elastoscatter
