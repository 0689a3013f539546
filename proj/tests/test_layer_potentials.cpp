#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "elastoscatter/layer_potentials.hpp"

using namespace elastoscatter;

namespace {

const Material kMat(2.0, 1.0, 2.0);

MeshPtr sphere_mesh(int nt, double radius = 1.0, const Vec3& center = Vec3::Zero()) {
  return std::make_shared<SurfaceMesh>(build_mesh(ObstacleShape::sphere(radius, center), nt, 2 * nt));
}

// smooth tangential-plus-normal density
SurfaceDensity smooth_density(const MeshPtr& mesh) {
  CFields v(3, mesh->size());
  for (Eigen::Index k = 0; k < mesh->size(); ++k) {
    const Vec3 y = mesh->nodes.col(k);
    v.col(k) = CVec3(Complex(1.0 + y.z(), 0.3 * y.x()), Complex(y.x() * y.y(), -0.5), Complex(0.2, y.y()));
  }
  return SurfaceDensity(mesh, v);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / n, my += y[i] / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxy / sxx;
}

// Traces of u and T_nu u on a mesh for a field with known Jacobian.
template <typename Value, typename Jac>
std::pair<SurfaceDensity, SurfaceDensity> traces(const MeshPtr& mesh, Value value, Jac jac) {
  CFields u(3, mesh->size()), tu(3, mesh->size());
  for (Eigen::Index k = 0; k < mesh->size(); ++k) {
    u.col(k) = value(mesh->nodes.col(k));
    tu.col(k) = traction(kMat, mesh->normals.col(k), jac(mesh->nodes.col(k)));
  }
  return {SurfaceDensity(mesh, u), SurfaceDensity(mesh, tu)};
}

}  // namespace

TEST_CASE("density length is validated") {
  const auto mesh = sphere_mesh(8);
  CHECK_THROWS_AS(SurfaceDensity(mesh, CFields::Zero(3, 5)), InvalidArgument);
}

TEST_CASE("single layer: zero density, linearity, too-close") {
  const auto mesh = sphere_mesh(16);
  const Vec3 x(0.4, -0.2, 2.0), n = Vec3(1, 1, 0).normalized();
  CHECK(single_layer(SurfaceDensity::zero(mesh), x, kMat).norm() == 0.0);
  CHECK(single_layer_traction(SurfaceDensity::zero(mesh), x, n, kMat).norm() == 0.0);

  const SurfaceDensity a = smooth_density(mesh);
  SurfaceDensity b = a;
  b.values = b.values.cwiseProduct(b.values) + CFields::Constant(3, mesh->size(), Complex(0.1, 0.7));
  const Complex ca(0.3, -1.2), cb(2.0, 0.5);
  const SurfaceDensity combo(mesh, ca * a.values + cb * b.values);
  const CVec3 lhs = single_layer(combo, x, kMat);
  const CVec3 rhs = ca * single_layer(a, x, kMat) + cb * single_layer(b, x, kMat);
  CHECK((lhs - rhs).norm() < 1e-14 * rhs.norm());
  const CVec3 tl = single_layer_traction(combo, x, n, kMat);
  const CVec3 tr = ca * single_layer_traction(a, x, n, kMat) + cb * single_layer_traction(b, x, n, kMat);
  CHECK((tl - tr).norm() < 1e-14 * tr.norm());

  CHECK_THROWS_AS(single_layer(a, Vec3(0, 0, 1.01), kMat), TooCloseError);
  CHECK_THROWS_AS(single_layer_traction(a, Vec3(0, 0, 0.99), n, kMat), TooCloseError);
}

TEST_CASE("single layer radiates with 1/r decay") {
  const auto mesh = sphere_mesh(16);
  const SurfaceDensity phi = smooth_density(mesh);
  const Vec3 dir = Vec3(0.3, -0.5, 0.8).normalized();
  std::vector<double> lr, lv;
  for (double r = 10.0; r <= 100.0 + 1e-9; r *= std::pow(10.0, 0.1)) {
    lr.push_back(std::log(r));
    lv.push_back(std::log(single_layer(phi, r * dir, kMat).norm()));
  }
  CHECK(std::abs(fit_slope(lr, lv) + 1.0) < 0.05);
}

TEST_CASE("single layer traction agrees with differentiated potential") {
  const auto mesh = sphere_mesh(16);
  const SurfaceDensity phi = smooth_density(mesh);
  const VectorField v = [&](const Vec3& x) { return single_layer(phi, x, kMat); };
  for (const Vec3& x : {Vec3(0, 0, 1.5), Vec3(Vec3(1.2, 0.6, -0.7).normalized() * 1.5)}) {
    const Vec3 n = Vec3(0.2, -0.4, 0.9).normalized();
    const CVec3 fd = traction(kMat, n, jacobian_fd(v, x, 1e-3));
    const CVec3 an = single_layer_traction(phi, x, n, kMat);
    CHECK((fd - an).norm() < 1e-5 * an.norm());

    // off-surface the potential solves the Navier equation; residual measured
    // against the size of the omega^2 u term
    const double scale = kMat.omega() * kMat.omega() * v(x).norm();
    CHECK(navier_residual_fd(v, x, kMat, 1e-3).norm() < 1e-5 * scale);
  }
}

TEST_CASE("jump relation") {
  const auto mesh = sphere_mesh(32);
  CHECK(jump_estimate(SurfaceDensity::zero(mesh), 17, {0.3, 0.2, 0.1}, kMat).norm() == 0.0);
  CHECK_THROWS_AS(jump_estimate(SurfaceDensity::zero(mesh), 17, {0.1, 0.2}, kMat), InvalidArgument);
  CHECK_THROWS_AS(jump_estimate(SurfaceDensity::zero(mesh), 17, {0.1}, kMat), InvalidArgument);

  // phi = nu, weighted L2 error over a node subset
  const SurfaceDensity phi(mesh, mesh->normals.cast<Complex>());
  double num = 0, den = 0;
  for (Eigen::Index k = 0; k < mesh->size(); k += 23) {
    const CVec3 est = jump_estimate(phi, k, {0.3, 0.2, 0.1}, kMat);
    num += mesh->weights[k] * (est - phi.values.col(k)).squaredNorm();
    den += mesh->weights[k] * phi.values.col(k).squaredNorm();
  }
  CHECK(std::sqrt(num / den) < 5e-2);
}

TEST_CASE("traction of the Kupradze tensor integrates to -c on small spheres") {
  // Gauss: the integral equals -c - omega^2 int_B U c, the volume term is O(eps^2)
  const Vec3 y(0.3, -0.1, 0.2);
  const CVec3 c(1.0, Complex(0.0, -2.0), 0.5);
  std::vector<double> errs;
  for (double eps : {0.1, 0.05, 0.025}) {
    const auto mesh = sphere_mesh(16, eps, y);
    CVec3 sum = CVec3::Zero();
    for (Eigen::Index k = 0; k < mesh->size(); ++k) {
      sum += mesh->weights[k] * (kupradze_traction(mesh->nodes.col(k), mesh->normals.col(k), y, kMat).transpose() * c);
    }
    errs.push_back((sum + c).norm() / c.norm());
  }
  CHECK(errs[2] < 1e-2);
  CHECK(std::abs(std::log2(errs[0] / errs[1]) - 2.0) < 0.2);
  CHECK(std::abs(std::log2(errs[1] / errs[2]) - 2.0) < 0.2);
}

TEST_CASE("Betti representation") {
  const auto mesh = sphere_mesh(32);
  const Vec3 x(0.2, 0.1, 3.0);
  CHECK(betti_representation(SurfaceDensity::zero(mesh), SurfaceDensity::zero(mesh), x, kMat).norm() == 0.0);

  // radiating field from interior point sources is reproduced outside
  const Vec3 z1(0.2, 0.1, -0.3), z2(-0.4, 0.0, 0.1);
  const CVec3 c1(1.0, 0.5, Complex(0, 1)), c2(Complex(0.3, 0.2), -1.0, 0.4);
  auto value = [&](const Vec3& p) -> CVec3 { return kupradze_tensor(p, z1, kMat) * c1 + kupradze_tensor(p, z2, kMat) * c2; };
  auto jac = [&](const Vec3& p) {
    const auto g1 = kupradze_gradient(p, z1, kMat), g2 = kupradze_gradient(p, z2, kMat);
    CMat3 j = CMat3::Zero();
    for (int m = 0; m < 3; ++m) j += g1[m] * c1[m] + g2[m] * c2[m];
    return j;
  };
  const auto [tu, ttu] = traces(mesh, value, jac);
  for (const Vec3& p : {x, Vec3(2, -1, 0.5), Vec3(0, 0, -5)}) {
    CHECK((betti_representation(tu, ttu, p, kMat) - value(p)).norm() < 1e-6 * value(p).norm());
  }

  // entire solution: the integral vanishes outside the surface
  const PlaneWave wave(Vec3(0.48, 0.6, 0.64), Vec3(1, 0.2, -0.5));
  auto pw = [&](const Vec3& p) { return plane_wave(p, wave, kMat); };
  auto pj = [&](const Vec3& p) { return plane_wave_jacobian(p, wave, kMat); };
  const auto [pu, ptu] = traces(mesh, pw, pj);
  for (const Vec3& p : {x, Vec3(2, -1, 0.5)}) {
    CHECK(betti_representation(pu, ptu, p, kMat).norm() < 1e-3 * pw(p).norm());
  }
}

TEST_CASE("Betti identity for two plane waves") {
  const auto mesh = sphere_mesh(24, 1.3, Vec3(0.1, 0.2, -0.1));
  const PlaneWave a(Vec3(0, 0, 1), Vec3(1, 0, 1)), b(Vec3(0.6, 0.8, 0), Vec3(0.2, -1, 0.3));
  Complex sum = 0.0;
  double scale = 0.0;
  for (Eigen::Index k = 0; k < mesh->size(); ++k) {
    const Vec3 y = mesh->nodes.col(k), n = mesh->normals.col(k);
    const CVec3 u = plane_wave(y, a, kMat), v = plane_wave(y, b, kMat);
    const CVec3 tu = traction(kMat, n, plane_wave_jacobian(y, a, kMat));
    const CVec3 tv = traction(kMat, n, plane_wave_jacobian(y, b, kMat));
    const Complex term = u.transpose() * tv;
    const Complex other = v.transpose() * tu;
    sum += mesh->weights[k] * (term - other);
    scale += mesh->weights[k] * std::abs(term);
  }
  CHECK(std::abs(sum) < 1e-8 * scale);
}
