#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "elastoscatter/elastodynamics.hpp"

using namespace elastoscatter;

namespace {

Vec3 random_unit(std::mt19937& gen) {
  std::normal_distribution<double> nd;
  Vec3 v(nd(gen), nd(gen), nd(gen));
  return v.normalized();
}

CMat3 random_cmat(std::mt19937& gen) {
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  CMat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(ud(gen), ud(gen));
  return m;
}

VectorField kupradze_column(const Vec3& y, const Material& mat, int j, KernelPart part = KernelPart::full) {
  return [=](const Vec3& x) -> CVec3 { return kupradze_tensor(x, y, mat, part).col(j); };
}

// Richardson slope log2(e(h)/e(h/2)) for the FD Navier residual of a field.
double residual_slope(const VectorField& f, const Vec3& x, const Material& mat, double h) {
  const double e1 = navier_residual_fd(f, x, mat, h).norm();
  const double e2 = navier_residual_fd(f, x, mat, h / 2).norm();
  return std::log2(e1 / e2);
}

}  // namespace

TEST_CASE("wave numbers") {
  auto k = wave_numbers(Material(2, 1, 2));
  CHECK(k.kappa_p == doctest::Approx(1.0));
  CHECK(k.kappa_s == doctest::Approx(2.0));
  k = wave_numbers(Material(0, 1, 1));
  CHECK(k.kappa_p == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(k.kappa_s == doctest::Approx(1.0));
  k = wave_numbers(Material(1, 1, 3));
  CHECK(k.kappa_p == doctest::Approx(std::sqrt(3.0)));
  CHECK(k.kappa_s == doctest::Approx(3.0));
  CHECK(Material(-0.5, 1, 1).kappa_p() < Material(-0.5, 1, 1).kappa_s());

  CHECK_THROWS_AS(Material(1, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(Material(-3, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(Material(1, 1, 0), InvalidArgument);
}

TEST_CASE("plane waves: examples") {
  const Material mat(2, 1, 1.3);
  const Vec3 z(0, 0, 1), ex(1, 0, 0);
  CHECK(plane_p_wave(Vec3(0.3, -1, 2), PlaneWave(z, ex, WaveKind::pressure), mat).norm() == 0.0);
  CHECK((plane_p_wave(Vec3::Zero(), PlaneWave(z, z, WaveKind::pressure), mat) - CVec3(0, 0, 0.25)).norm() < 1e-15);
  CHECK(plane_s_wave(Vec3(1, 2, 3), PlaneWave(z, z, WaveKind::shear), mat).norm() < 1e-15);
  CHECK((plane_s_wave(Vec3::Zero(), PlaneWave(z, ex, WaveKind::shear), mat) - CVec3(1, 0, 0)).norm() < 1e-15);

  const PlaneWave along(ex, ex);
  CHECK(plane_s_wave(Vec3(0.2, 0.1, 0.4), along, mat).norm() < 1e-15);
  CHECK(plane_full_wave(Vec3(0.2, 0.1, 0.4), along, mat).isApprox(plane_p_wave(Vec3(0.2, 0.1, 0.4), along, mat)));

  CHECK_THROWS_AS(PlaneWave(Vec3(1, 1e-5, 0), ex), InvalidArgument);
}

TEST_CASE("plane waves: invariants and Navier residual") {
  std::mt19937 gen(11);
  const Material mat(1.7, 0.8, 1.0);
  std::uniform_real_distribution<double> ud(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 alpha = random_unit(gen), eta = random_unit(gen) * 1.5;
    const Vec3 x(ud(gen), ud(gen), ud(gen));
    const PlaneWave wave(alpha, eta);
    const CVec3 p = plane_p_wave(x, wave, mat), s = plane_s_wave(x, wave, mat);
    CHECK(std::abs(alpha.cast<Complex>().dot(s)) < 1e-14);
    CHECK(p.cross(alpha.cast<Complex>()).norm() < 1e-14 * (1 + p.norm()));
    CHECK((plane_full_wave(x, wave, mat) - p - s).cwiseAbs().maxCoeff() < 1e-15);

    for (WaveKind kind : {WaveKind::pressure, WaveKind::shear, WaveKind::full}) {
      const PlaneWave w(alpha, eta, kind);
      VectorField f = [&](const Vec3& q) { return plane_wave(q, w, mat); };
      const double mag = f(x).norm();
      if (mag < 1e-12) continue;
      CHECK(navier_residual_fd(f, x, mat, 1e-3).norm() < 1e-6 * mag);
      CHECK((plane_wave_jacobian(x, w, mat) - jacobian_fd(f, x, 1e-3)).norm() < 1e-8 * mag);
    }
  }
}

TEST_CASE("strain and stress") {
  std::mt19937 gen(3);
  CHECK(strain(CMat3::Identity()).isApprox(CMat3::Identity()));
  CMat3 anti = random_cmat(gen);
  anti = anti - anti.transpose().eval();
  CHECK(strain(anti).norm() == 0.0);
  const CMat3 j = random_cmat(gen);
  CHECK((strain(j) - strain(j).transpose()).norm() < 1e-15);

  const Material mat(2, 1, 1);
  CHECK(stress(mat, CMat3::Identity()).isApprox(8.0 * CMat3::Identity()));
  CHECK(stress(mat, CMat3::Zero()).norm() == 0.0);
  CMat3 sym = j + j.transpose();
  sym -= (sym.trace() / 3.0) * CMat3::Identity();
  CHECK((stress(Material(5.3, 1, 1), sym) - 2.0 * sym).norm() < 1e-14);
  CHECK((stress(mat, j) - stress(mat, j).transpose()).norm() < 1e-14);
}

TEST_CASE("traction forms agree") {
  const Material mat(2, 1, 1);
  CHECK((traction(mat, Vec3(0, 0, 1), CMat3::Identity()) - CVec3(0, 0, 8)).norm() < 1e-15);
  CHECK(traction(mat, Vec3(0, 0, 1), CMat3::Zero()).norm() == 0.0);

  std::mt19937 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Material m(0.1 + trial * 0.03, 0.5 + trial * 0.01, 1.0);
    const CMat3 j = random_cmat(gen);
    const Vec3 n = random_unit(gen);
    CHECK((traction(m, n, j) - traction_curl_form(m, n, j)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("Kupradze tensor symmetry and bound") {
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> ud(-3, 3);
  const Material mat(1.3, 0.9, 2.2);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 x(ud(gen), ud(gen), ud(gen)), y(ud(gen), ud(gen), ud(gen));
    const CMat3 u = kupradze_tensor(x, y, mat);
    CHECK((u - u.transpose()).norm() == 0.0);
    CHECK((u - kupradze_tensor(y, x, mat)).cwiseAbs().maxCoeff() <= 1e-15 * u.cwiseAbs().maxCoeff());
  }
  CHECK_THROWS_AS(kupradze_tensor(Vec3(1, 2, 3), Vec3(1, 2, 3), mat), CoincidenceError);

  // |U| r stays bounded: near the source U ~ const/r (Kelvin solution), far away ~ 1/r
  const Material unit(1, 1, 1);
  double cmin = 1e300, cmax = 0;
  for (double r = 0.1; r <= 10.0; r *= 1.2) {
    const double c = kupradze_tensor(Vec3(r, 0, 0), Vec3::Zero(), unit).norm() * 4 * kPi * r;
    cmin = std::min(cmin, c);
    cmax = std::max(cmax, c);
  }
  CHECK(cmax < 10.0);
  CHECK(cmin > 0.1);
}

TEST_CASE("pressure and shear kernel parts") {
  const Material mat(1.3, 0.9, 2.2);
  const Vec3 x(0.4, -0.3, 0.8), y(-0.2, 0.1, 0.05);
  const CMat3 full = kupradze_tensor(x, y, mat);
  const CMat3 sum = kupradze_tensor(x, y, mat, KernelPart::pressure) + kupradze_tensor(x, y, mat, KernelPart::shear);
  CHECK((full - sum).cwiseAbs().maxCoeff() < 1e-14 * full.cwiseAbs().maxCoeff());
  for (int j = 0; j < 3; ++j) {
    const auto jp = jacobian_fd(kupradze_column(y, mat, j, KernelPart::pressure), x, 1e-3);
    const auto js = jacobian_fd(kupradze_column(y, mat, j, KernelPart::shear), x, 1e-3);
    const double scale = full.cwiseAbs().maxCoeff();
    // pressure part curl free, shear part divergence free
    CHECK(std::abs(jp(2, 1) - jp(1, 2)) + std::abs(jp(0, 2) - jp(2, 0)) + std::abs(jp(1, 0) - jp(0, 1)) < 1e-8 * scale);
    CHECK(std::abs(js.trace()) < 1e-8 * scale);
  }
}

TEST_CASE("Kupradze gradient and traction against finite differences") {
  std::mt19937 gen(23);
  const Material mat(1.3, 0.9, 2.2);
  for (double r : {0.2, 0.5, 1.0, 3.0}) {
    for (int trial = 0; trial < 5; ++trial) {
      const Vec3 y(0.1, -0.2, 0.3);
      const Vec3 x = y + r * random_unit(gen);
      const Vec3 n = random_unit(gen);
      const auto grad = kupradze_gradient(x, y, mat);
      CMat3 t_fd;
      double gscale = 0, gdev = 0;
      for (int j = 0; j < 3; ++j) {
        const CMat3 jac = jacobian_fd(kupradze_column(y, mat, j), x, 1e-4 * r);
        gscale = std::max(gscale, jac.cwiseAbs().maxCoeff());
        gdev = std::max(gdev, (jac - grad[j]).cwiseAbs().maxCoeff());
        t_fd.col(j) = traction(mat, n, jac);
      }
      const CMat3 t = kupradze_traction(x, n, y, mat);
      CAPTURE(r);
      CHECK(gdev < 1e-5 * gscale);
      CHECK((t - t_fd).cwiseAbs().maxCoeff() < 1e-5 * t_fd.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("Kupradze traction decays like 1/r") {
  const Material mat(1.0, 1.0, 1.0);
  const Vec3 dir = Vec3(1, 2, 2) / 3.0;
  const Vec3 n = Vec3(0, 0.6, 0.8);
  std::vector<double> lr, lt;
  for (double r = 50; r <= 400.0 + 1e-9; r *= std::pow(2.0, 0.25)) {
    lr.push_back(std::log(r));
    lt.push_back(std::log(kupradze_traction(r * dir, n, Vec3::Zero(), mat).norm()));
  }
  const double n_pts = static_cast<double>(lr.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lr.size(); ++i) mx += lr[i] / n_pts, my += lt[i] / n_pts;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lr.size(); ++i) sxy += (lr[i] - mx) * (lt[i] - my), sxx += (lr[i] - mx) * (lr[i] - mx);
  CHECK(std::abs(sxy / sxx + 1.0) < 0.05);
}

TEST_CASE("Navier residual oracle") {
  const Material mat(1.0, 1.0, 1.0);
  const CVec3 c(1.0, Complex(0, 2), -0.5);
  VectorField constant = [&](const Vec3&) { return c; };
  CHECK((navier_residual_fd(constant, Vec3(0.3, 0.2, 0.1), mat, 1e-2) - c).norm() < 1e-14);

  // Kupradze columns solve Navier away from the source; FD residual is second order
  const Material m2(1.3, 0.9, 2.2);
  const Vec3 y(0.0, 0.0, 0.0);
  for (double r : {0.2, 1.0, 5.0}) {
    const Vec3 x = r * Vec3(0.48, 0.6, 0.64);
    for (int j = 0; j < 3; ++j) {
      const double slope = residual_slope(kupradze_column(y, m2, j), x, m2, 0.02 * r);
      CAPTURE(r);
      CHECK(std::abs(slope - 2.0) < 0.2);
    }
  }
  // r = 0.5: residual small against the size of the second-derivative terms |U|/r^2
  const double mag = kupradze_tensor(Vec3(0.5, 0, 0), y, Material(1, 1, 1)).norm() / 0.25;
  for (int j = 0; j < 3; ++j) {
    CHECK(navier_residual_fd(kupradze_column(y, Material(1, 1, 1), j), Vec3(0.3, 0.4, 0), Material(1, 1, 1), 1e-3).norm() <
          1e-5 * mag);
  }
}

TEST_CASE("finite-difference Laplacian orders") {
  VectorField f = [](const Vec3& x) { return CVec3(std::exp(kI * x[0]) * std::sin(x[1]), x[2] * x[2] * x[0], std::cos(x[1] + x[2])); };
  const Vec3 x(0.3, 0.7, -0.2);
  const CVec3 exact(-2.0 * std::exp(kI * x[0]) * std::sin(x[1]), 2.0 * x[0], -2.0 * std::cos(x[1] + x[2]));
  const double e2a = (laplacian_fd(f, x, 0.02, 2) - exact).norm(), e2b = (laplacian_fd(f, x, 0.01, 2) - exact).norm();
  const double e4a = (laplacian_fd(f, x, 0.02, 4) - exact).norm(), e4b = (laplacian_fd(f, x, 0.01, 4) - exact).norm();
  CHECK(std::abs(std::log2(e2a / e2b) - 2.0) < 0.2);
  CHECK(std::abs(std::log2(e4a / e4b) - 4.0) < 0.3);
}
