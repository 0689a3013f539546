#include "elastoscatter/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace elastoscatter {

namespace {

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(fn) + ": argument must be positive and finite, got " +
                      std::to_string(x));
  }
}

void require_degree(int n, const char* fn) {
  if (n < 0) throw DomainError(std::string(fn) + ": negative degree");
}

// Miller's downward recurrence, normalised against j_0 or j_1.
double bessel_j_downward(int n, double x) {
  const int start = std::max(n, static_cast<int>(x)) + 32 +
                    static_cast<int>(std::sqrt(40.0 * std::max<double>(n, x)));
  double f_next = 0.0;   // f_{k+1}
  double f_curr = 1e-300;  // f_k
  double f_n = 0.0;
  double f_0 = 0.0;
  double f_1 = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k == n) f_n = f_curr;
    if (k == 1) f_1 = f_curr;
    if (k == 0) {
      f_0 = f_curr;
      break;
    }
    const double f_prev = (2.0 * k + 1.0) / x * f_curr - f_next;
    f_next = f_curr;
    f_curr = f_prev;
    if (std::abs(f_curr) > 1e250) {
      f_curr *= 1e-250;
      f_next *= 1e-250;
      f_n *= 1e-250;
      f_1 *= 1e-250;
    }
  }
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  // normalise against whichever exact value is better conditioned
  if (std::abs(j0) >= std::abs(j1)) return f_n * (j0 / f_0);
  return f_n * (j1 / f_1);
}

}  // namespace

ModeIndex::ModeIndex(int degree, int order) : n(degree), m(order) {
  if (degree < 0 || std::abs(order) > degree) {
    throw InvalidArgument("ModeIndex: require n >= 0 and |m| <= n, got (" + std::to_string(degree) +
                          ", " + std::to_string(order) + ")");
  }
}

double sph_bessel_j(int n, double x) {
  require_degree(n, "sph_bessel_j");
  require_positive(x, "sph_bessel_j");
  if (x < 1e-3) {
    // leading terms of the power series; avoids 0/0 in the closed forms
    double lead = 1.0;
    for (int k = 1; k <= n; ++k) lead *= x / (2.0 * k + 1.0);
    const double x2 = x * x;
    return lead * (1.0 - x2 / (2.0 * (2 * n + 3)) + x2 * x2 / (8.0 * (2 * n + 3) * (2 * n + 5)));
  }
  const double j0 = std::sin(x) / x;
  if (n == 0) return j0;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  if (n == 1) return j1;
  if (n > x) return bessel_j_downward(n, x);
  double jm = j0;
  double jc = j1;
  for (int k = 1; k < n; ++k) {
    const double jn = (2.0 * k + 1.0) / x * jc - jm;
    jm = jc;
    jc = jn;
  }
  return jc;
}

double sph_bessel_y(int n, double x) {
  require_degree(n, "sph_bessel_y");
  require_positive(x, "sph_bessel_y");
  const double y0 = -std::cos(x) / x;
  if (n == 0) return y0;
  const double y1 = -std::cos(x) / (x * x) - std::sin(x) / x;
  double ym = y0;
  double yc = y1;
  for (int k = 1; k < n; ++k) {
    const double yn = (2.0 * k + 1.0) / x * yc - ym;
    ym = yc;
    yc = yn;
  }
  return yc;
}

Complex sph_hankel1(int n, double x) { return {sph_bessel_j(n, x), sph_bessel_y(n, x)}; }

Complex sph_hankel2(int n, double x) { return {sph_bessel_j(n, x), -sph_bessel_y(n, x)}; }

double assoc_legendre(int n, int m, double t) {
  if (n < 0 || m < 0 || m > n) throw InvalidArgument("assoc_legendre: require 0 <= m <= n");
  if (std::abs(t) > 1.0) throw DomainError("assoc_legendre: |t| > 1");
  const double s = std::sqrt((1.0 - t) * (1.0 + t));
  double pmm = 1.0;
  for (int k = 1; k <= m; ++k) pmm *= (2.0 * k - 1.0) * s;
  if (n == m) return pmm;
  double pm1 = t * (2.0 * m + 1.0) * pmm;
  if (n == m + 1) return pm1;
  double p = 0.0;
  for (int l = m + 2; l <= n; ++l) {
    p = ((2.0 * l - 1.0) * t * pm1 - (l + m - 1.0) * pmm) / (l - m);
    pmm = pm1;
    pm1 = p;
  }
  return p;
}

Complex sph_harmonic(const ModeIndex& mode, double theta, double phi) {
  const int n = mode.n;
  const int m = std::abs(mode.m);
  if (m > n || n < 0) throw InvalidArgument("sph_harmonic: require |m| <= n");
  if (theta < 0.0 || theta > kPi) throw DomainError("sph_harmonic: theta outside [0, pi]");
  const double t = std::cos(theta);
  const double s = std::sin(theta);

  // fully normalised recurrence: bar P_n^m = sqrt((2n+1)/(4 pi) (n-m)!/(n+m)!) P_n^m
  double pmm = 1.0 / std::sqrt(4.0 * kPi);
  for (int k = 1; k <= m; ++k) pmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  double value = pmm;
  if (n > m) {
    double pm1 = std::sqrt(2.0 * m + 3.0) * t * pmm;
    value = pm1;
    for (int l = m + 2; l <= n; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      const double p = a * (t * pm1 - b * pmm);
      pmm = pm1;
      pm1 = p;
    }
    value = pm1;
  }
  return value * std::exp(kI * (static_cast<double>(mode.m) * phi));
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      // refresh derivative at the converged root
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

SphereQuadrature::SphereQuadrature(int nt, int np) : n_theta(nt), n_phi(np) {
  if (nt < 1 || np < 1) throw InvalidArgument("SphereQuadrature: resolution must be positive");
  const QuadratureRule gl = gauss_legendre(nt);
  const Eigen::Index count = static_cast<Eigen::Index>(nt) * np;
  theta.resize(count);
  phi.resize(count);
  directions.resize(3, count);
  weights.resize(count);
  const double dphi = 2.0 * kPi / np;
  for (int i = 0; i < nt; ++i) {
    // descending cos(theta) so that theta increases with i
    const double t = gl.nodes[nt - 1 - i];
    const double th = std::acos(t);
    for (int j = 0; j < np; ++j) {
      const Eigen::Index k = static_cast<Eigen::Index>(i) * np + j;
      theta[k] = th;
      phi[k] = j * dphi;
      directions.col(k) = unit_direction(th, phi[k]);
      weights[k] = gl.weights[nt - 1 - i] * dphi;
    }
  }
}

}  // namespace elastoscatter
