#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "elastoscatter/farfield.hpp"

using namespace elastoscatter;

namespace {

const Material kMat(2.0, 1.0, 2.0);
const Vec3 kAlpha(0, 0, 1);
const PlaneWave kWave(kAlpha, Vec3(1, 0, 1).normalized());

const SystemPtr& rigid_sphere() {
  static const SystemPtr s = make_system(ObstacleShape::sphere(1.0), BoundaryCondition::dirichlet(), kMat);
  return s;
}

double max_rel(const CFields& a, const CFields& b) {
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    num = std::max(num, (a.col(i) - b.col(i)).norm());
    den = std::max(den, b.col(i).norm());
  }
  return num / den;
}

}  // namespace

TEST_CASE("projector") {
  const Mat3 a = projector(Vec3(0, 0, 1));
  CHECK((a * Vec3(0, 0, 5) - Vec3(0, 0, 5)).norm() == 0.0);
  CHECK(((Mat3::Identity() - a) * Vec3(0, 0, 5)).norm() == 0.0);
  CHECK((a * Vec3(1, 0, 0)).norm() == 0.0);
  CHECK(((Mat3::Identity() - a) * Vec3(1, 0, 0) - Vec3(1, 0, 0)).norm() == 0.0);
  CHECK_THROWS_AS(projector(Vec3(0, 0, 1.1)), InvalidArgument);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (int i = 0; i < 20; ++i) {
    const Vec3 x = Vec3(n(rng), n(rng), n(rng)).normalized(), eta(n(rng), n(rng), n(rng));
    const Mat3 p = projector(x);
    CHECK((p * p - p).norm() < 1e-15);
    CHECK((p - p.transpose()).norm() == 0.0);
    CHECK(((Mat3::Identity() - p) * p).norm() < 1e-15);
    // (I - A) eta = eta - (x.eta) x = -x x (x x eta)
    CHECK(((Mat3::Identity() - p) * eta + x.cross(x.cross(eta))).norm() < 1e-14 * eta.norm());
  }
}

TEST_CASE("source-sum pattern matches the direct asymptotics of one source") {
  // one nonzero coefficient: the scaled field r e^{-i kappa r} u(r x) tends to the pattern
  const auto base = solve(rigid_sphere(), IncidentField::plane(kWave));
  ScatteringSolution one{base.system, base.incident, CFields::Zero(3, base.coefficients.cols()), {}};
  one.coefficients.col(17) = CVec3(Complex(1.0, 0.5), Complex(-0.3, 0.0), Complex(0.2, 2.0));
  const Vec3 xhat = Vec3(1, -2, 2) / 3.0;
  Points d(3, 1);
  d.col(0) = xhat;
  const PatternPair pat = farfield_from_sources(one, d);
  const double r = 1e6;
  const CVec3 up = r * std::exp(-kI * (kMat.kappa_p() * r)) * eval_scattered(one, r * xhat, KernelPart::pressure);
  const CVec3 us = r * std::exp(-kI * (kMat.kappa_s() * r)) * eval_scattered(one, r * xhat, KernelPart::shear);
  CHECK((up - pat.p.values.col(0)).norm() < 1e-5 * pat.p.values.col(0).norm());
  CHECK((us - pat.s.values.col(0)).norm() < 1e-5 * pat.s.values.col(0).norm());
}

TEST_CASE("pattern invariants and the zero solution") {
  const Points dirs = direction_grid(12, 24);
  const auto zero = solve(rigid_sphere(), IncidentField::plane(PlaneWave(kAlpha, Vec3::Zero())));
  const PatternPair z = farfield_from_sources(zero, dirs);
  CHECK(z.p.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.s.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.p.tag == PatternTag::p_part);
  CHECK(z.s.tag == PatternTag::s_part);

  const PatternPair pats = farfield_from_sources(solve(rigid_sphere(), IncidentField::plane(kWave)), dirs);
  CHECK(pats.full().tag == PatternTag::full);
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    const CVec3 x = dirs.col(i).cast<Complex>();
    const CVec3 p = pats.p.values.col(i), s = pats.s.values.col(i);
    CHECK((p - x * (x.transpose() * p)(0)).norm() <= 1e-12 * p.norm());
    CHECK(std::abs((x.transpose() * s)(0)) <= 1e-12 * s.norm());
  }
}

TEST_CASE("boundary-integral route") {
  const auto mesh = std::make_shared<const SurfaceMesh>(rigid_sphere()->mesh());
  const FarFieldValue zero =
      farfield_boundary_integral(SurfaceDensity::zero(mesh), SurfaceDensity::zero(mesh), kAlpha, kMat);
  CHECK(zero.p.norm() == 0.0);
  CHECK(zero.s.norm() == 0.0);

  const auto sol = solve(rigid_sphere(), IncidentField::plane(kWave));
  const auto [tu, ttu] = scattered_traces(sol, mesh);
  const Points dirs = direction_grid(8, 16);
  const PatternPair pats = farfield_from_sources(sol, dirs);
  CFields p(3, dirs.cols()), s(3, dirs.cols());
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    const FarFieldValue v = farfield_boundary_integral(tu, ttu, dirs.col(i), kMat);
    p.col(i) = v.p;
    s.col(i) = v.s;
  }
  CHECK(max_rel(p, pats.p.values) < 1e-3);
  CHECK(max_rel(s, pats.s.values) < 1e-3);

  // an entire field (the incident wave) has no far field
  CFields u(3, mesh->size()), t(3, mesh->size());
  for (Eigen::Index k = 0; k < mesh->size(); ++k) {
    u.col(k) = plane_wave(mesh->nodes.col(k), kWave, kMat);
    t.col(k) = traction(kMat, mesh->normals.col(k), plane_wave_jacobian(mesh->nodes.col(k), kWave, kMat));
  }
  const FarFieldValue ent = farfield_boundary_integral(SurfaceDensity(mesh, u), SurfaceDensity(mesh, t), Vec3(0.6, 0, 0.8), kMat);
  CHECK((ent.p + ent.s).norm() < 1e-8);
}

TEST_CASE("scaled field remainder decays like 1/r") {
  const auto sol = solve(rigid_sphere(), IncidentField::plane(kWave));
  const Vec3 xhat = Vec3(1, 2, 2) / 3.0;
  Points d(3, 1);
  d.col(0) = xhat;
  const PatternPair pat = farfield_from_sources(sol, d);
  std::vector<double> radii{20, 40, 80, 160, 320}, err;
  for (double r : radii) {
    err.push_back((r * std::exp(-kI * (kMat.kappa_p() * r)) * eval_scattered(sol, r * xhat, KernelPart::pressure) -
                   pat.p.values.col(0)).norm());
  }
  CHECK(loglog_slope(radii, err) == doctest::Approx(-1.0).epsilon(0.1));
}

TEST_CASE("far-field matrix") {
  const Points dirs = direction_grid(6, 12);
  const FarFieldMatrix m = farfield_matrix(rigid_sphere(), kAlpha, dirs);
  REQUIRE(m.p.size() == static_cast<std::size_t>(dirs.cols()));

  const PatternPair e1 = farfield_from_sources(solve(rigid_sphere(), IncidentField::plane(PlaneWave(kAlpha, Vec3::UnitX()))), dirs);
  const Vec3 eta(0.3, -1.1, 0.6);
  const PatternPair direct = farfield_from_sources(solve(rigid_sphere(), IncidentField::plane(PlaneWave(kAlpha, eta))), dirs);
  const FarFieldMatrix mp = farfield_matrix(rigid_sphere(), kAlpha, dirs, WaveKind::pressure);
  const FarFieldMatrix ms = farfield_matrix(rigid_sphere(), kAlpha, dirs, WaveKind::shear);
  CFields col(3, dirs.cols()), applied(3, dirs.cols()), decomposed(3, dirs.cols());
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    col.col(i) = m.full(i).col(0);
    applied.col(i) = m.full(i) * eta.cast<Complex>();
    decomposed.col(i) = (mp.full(i) + ms.full(i)) * eta.cast<Complex>();
  }
  CHECK(max_rel(col, e1.full().values) < 1e-10);
  CHECK(max_rel(applied, direct.full().values) < 1e-10);
  CHECK(max_rel(decomposed, applied) < 1e-4);
}

TEST_CASE("four-block split") {
  const auto blocks = split_pattern(CMat3::Identity(), kAlpha, kAlpha);
  const CMat3 a = projector(kAlpha).cast<Complex>();
  CHECK((blocks[0] - a).norm() == 0.0);
  CHECK(blocks[1].norm() == 0.0);
  CHECK(blocks[2].norm() == 0.0);
  CHECK((blocks[3] - (CMat3::Identity() - a)).norm() == 0.0);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  for (int i = 0; i < 10; ++i) {
    CMat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = Complex(n(rng), n(rng));
    const Vec3 x = Vec3(n(rng), n(rng), n(rng)).normalized(), al = Vec3(n(rng), n(rng), n(rng)).normalized();
    const auto b = split_pattern(m, x, al);
    CHECK((b[0] + b[1] + b[2] + b[3] - m).norm() < 1e-14 * m.norm());
  }
}

TEST_CASE("split far fields are stable under re-meshing") {
  SolverParams fine;
  fine.n_theta = 28;
  fine.n_phi = 56;
  const auto other = make_system(ObstacleShape::sphere(1.0), BoundaryCondition::dirichlet(), kMat, fine);
  const Points dirs = direction_grid(4, 8);
  const FarFieldMatrix a = farfield_matrix(rigid_sphere(), kAlpha, dirs), b = farfield_matrix(other, kAlpha, dirs);
  double worst = 0.0, scale = 0.0;
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    const auto ba = split_pattern(a.full(i), dirs.col(i), kAlpha), bb = split_pattern(b.full(i), dirs.col(i), kAlpha);
    for (int k = 0; k < 4; ++k) worst = std::max(worst, (ba[k] - bb[k]).norm());
    scale = std::max(scale, a.full(i).norm());
  }
  CHECK(worst < 1e-4 * scale);
}

TEST_CASE("direction grids") {
  CHECK(direction_grid(24, 48).cols() == 1152);
  const Points cap = cap_directions(24, 48, Vec3(0, 0, 2), kPi / 6);
  CHECK(cap.cols() > 0);
  for (Eigen::Index i = 0; i < cap.cols(); ++i) CHECK(cap(2, i) >= std::cos(kPi / 6));
  CHECK(cap_directions(24, 48, Vec3(0, 0, 1), kPi).cols() == 1152);
}

TEST_CASE("green asymptotics") {
  // omega = 3 pi / 5 makes (kappa_s - kappa_p) sigma a multiple of 2 pi on the sigma grid
  const Material mat(2.0, 1.0, 0.6 * kPi);
  const auto sys = make_system(ObstacleShape::sphere(1.0), BoundaryCondition::dirichlet(), mat);
  const std::vector<Vec3> pts{Vec3(2, 0, 0), Vec3(0, 1.6, 0.8), Vec3(0.7, 0.7, -1.6)};
  const auto rows = green_asymptotics_check(sys, kAlpha, Vec3(1, 0, 1).normalized(), pts, {20, 40, 80});
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].residual < 0.35 * rows[i - 1].residual);
    CHECK(rows[i].scaled_residual / rows[i - 1].scaled_residual == doctest::Approx(1.0).epsilon(0.3));
  }
  for (const auto& r : green_asymptotics_check(sys, kAlpha, Vec3::Zero(), pts, {20, 40})) CHECK(r.residual == 0.0);

  // alpha parallel to eta: the shear incident part vanishes identically
  const PlaneWave w(kAlpha, 2.0 * kAlpha);
  CHECK(plane_s_wave(Vec3(0.3, 0.1, -0.2), w, mat).norm() == 0.0);
}

TEST_CASE("mode fits of synthetic fields") {
  const std::vector<double> radii{10, 15, 22, 33, 50, 80};
  const double y00 = std::sqrt(4.0 * kPi);
  auto find = [](const std::vector<ModeFit>& fits, int n, int m, int comp) {
    for (const ModeFit& f : fits)
      if (f.mode.n == n && f.mode.m == m && f.component == comp) return f;
    FAIL("mode missing");
    return fits.front();
  };

  const VectorField out_s = [&](const Vec3& x) { return CVec3(sph_hankel1(0, kMat.kappa_s() * x.norm()), 0.0, 0.0); };
  const ModeFit a = find(rellich_modes(out_s, radii, 2, kMat), 0, 0, 0);
  CHECK(std::abs(a.beta_s - y00) < 1e-8 * y00);
  CHECK(std::abs(a.gamma_s) < 1e-10);

  const VectorField in_s = [&](const Vec3& x) { return CVec3(sph_hankel2(0, kMat.kappa_s() * x.norm()), 0.0, 0.0); };
  const ModeFit b = find(rellich_modes(in_s, radii, 2, kMat), 0, 0, 0);
  CHECK(std::abs(b.gamma_s - y00) < 1e-8 * y00);
  CHECK(std::abs(b.beta_s) < 1e-10);

  // degree 2 multipole in the y component, pressure branch
  const VectorField quad = [&](const Vec3& x) {
    const double r = x.norm();
    const Complex y21 = sph_harmonic(ModeIndex(2, 1), std::acos(x[2] / r), std::atan2(x[1], x[0]));
    return CVec3(0.0, sph_hankel1(2, kMat.kappa_p() * r) * y21, 0.0);
  };
  const auto fits = rellich_modes(quad, radii, 3, kMat);
  const ModeFit c = find(fits, 2, 1, 1);
  CHECK(std::abs(c.beta_p - 1.0) < 1e-8);
  CHECK(std::abs(c.gamma_p) < 1e-8);
  CHECK(std::abs(c.beta_s) < 1e-8);
  for (const ModeFit& f : fits) {
    if (f.mode.n == 2 && f.mode.m == 1 && f.component == 1) continue;
    CHECK(std::abs(f.beta_p) < 1e-8);
  }

  const VectorField zero = [](const Vec3&) { return CVec3::Zero().eval(); };
  for (const ModeFit& f : rellich_modes(zero, radii, 1, kMat)) {
    CHECK(f.beta_p == 0.0);
    CHECK(f.gamma_p == 0.0);
    CHECK(f.beta_s == 0.0);
    CHECK(f.gamma_s == 0.0);
  }

  CHECK_THROWS_AS(rellich_modes(zero, {10, 20, 30}, 1, kMat), InvalidArgument);
  CHECK_THROWS_AS(rellich_modes(zero, radii, 4, kMat, RellichOptions{4, 1e-2}), InvalidArgument);
}

TEST_CASE("outgoing purity of the scattered field") {
  const auto sol = solve(rigid_sphere(), IncidentField::plane(kWave));
  const VectorField u = [&](const Vec3& x) { return eval_scattered(sol, x); };
  const auto fits = rellich_modes(u, {10, 15, 22, 33, 50, 80}, 3, kMat);
  double bmax = 0.0;
  for (const ModeFit& f : fits) bmax = std::max({bmax, std::abs(f.beta_p), std::abs(f.beta_s)});
  CHECK(bmax > 1e-2);
  for (const ModeFit& f : fits) {
    if (std::abs(f.beta_p) > 1e-6 * bmax) CHECK(std::abs(f.gamma_p) < 1e-2 * std::abs(f.beta_p));
    if (std::abs(f.beta_s) > 1e-6 * bmax) CHECK(std::abs(f.gamma_s) < 1e-2 * std::abs(f.beta_s));
  }
}

TEST_CASE("log-log slope") {
  CHECK(loglog_slope({1, 2, 4, 8}, {3, 0.75, 0.1875, 0.046875}) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(loglog_slope({1}, {1}), InvalidArgument);
}
