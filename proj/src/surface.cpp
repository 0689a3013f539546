#include "elastoscatter/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace elastoscatter {

namespace {

double star_radius(const std::vector<StarCoefficient>& coeffs, const Vec3& d) {
  const double theta = std::acos(std::clamp(d.z(), -1.0, 1.0));
  const double phi = std::atan2(d.y(), d.x());
  double r = 0.0;
  for (const auto& c : coeffs) r += std::real(c.value * sph_harmonic(c.mode, theta, phi));
  return r;
}

Vec3 d_theta(double theta, double phi) {
  return {std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta)};
}

Vec3 d_phi(double theta, double phi) { return {-std::sin(theta) * std::sin(phi), std::sin(theta) * std::cos(phi), 0.0}; }

}  // namespace

ObstacleShape ObstacleShape::sphere(double radius, const Vec3& center) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw GeometryError("sphere: radius must be positive");
  ObstacleShape s;
  s.kind_ = Kind::sphere;
  s.center_ = center;
  s.radius_ = radius;
  s.bounding_radius_ = radius;
  return s;
}

ObstacleShape ObstacleShape::ellipsoid(const Vec3& semi_axes, const Vec3& center) {
  if (!(semi_axes.minCoeff() > 0.0) || !semi_axes.allFinite()) {
    throw GeometryError("ellipsoid: semi-axes must be positive");
  }
  ObstacleShape s;
  s.kind_ = Kind::ellipsoid;
  s.center_ = center;
  s.semi_axes_ = semi_axes;
  s.bounding_radius_ = semi_axes.maxCoeff();
  return s;
}

ObstacleShape ObstacleShape::star(std::vector<StarCoefficient> coefficients, const Vec3& center) {
  if (coefficients.empty()) throw GeometryError("star: empty radius expansion");
  ObstacleShape s;
  s.kind_ = Kind::star;
  s.center_ = center;
  s.coefficients_ = std::move(coefficients);
  // positivity and extent sampled on a grid finer than any mesh used in practice
  const SphereQuadrature grid(64, 128);
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const double r = star_radius(s.coefficients_, grid.directions.col(k));
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  if (!(rmin > 0.0)) throw GeometryError("star: radius function must be positive");
  s.radius_ = rmin;
  s.bounding_radius_ = 1.01 * rmax;
  return s;
}

double ObstacleShape::radial_extent(const Vec3& d) const {
  switch (kind_) {
    case Kind::sphere:
      return radius_;
    case Kind::ellipsoid:
      return 1.0 / d.cwiseQuotient(semi_axes_).norm();
    case Kind::star:
      break;
  }
  return star_radius(coefficients_, d);
}

ObstacleShape ObstacleShape::translated(const Vec3& new_center) const {
  ObstacleShape s = *this;
  s.center_ = new_center;
  return s;
}

Mat3 held_out_rotation() { return Eigen::AngleAxisd(0.61, Vec3(1.0, 2.0, 3.0).normalized()).toRotationMatrix(); }

SurfaceMesh build_mesh(const ObstacleShape& shape, int n_theta, int n_phi, const Mat3& rotation) {
  if (n_theta < 4 || n_phi < 8) throw InvalidArgument("build_mesh: need n_theta >= 4 and n_phi >= 8");
  const SphereQuadrature quad(n_theta, n_phi);
  SurfaceMesh mesh{shape, n_theta, n_phi, rotation, Points(3, quad.size()), Points(3, quad.size()),
                   Eigen::VectorXd(quad.size()), Eigen::VectorXd(quad.size())};
  const double dphi = 2.0 * kPi / n_phi;
  const Vec3& c = shape.center();
  for (Eigen::Index k = 0; k < quad.size(); ++k) {
    const double th = quad.theta[k], ph = quad.phi[k];
    const Vec3 e = rotation * quad.directions.col(k);
    const Vec3 e_t = rotation * d_theta(th, ph), e_p = rotation * d_phi(th, ph);
    Vec3 p, t_t, t_p;
    switch (shape.kind()) {
      case ObstacleShape::Kind::sphere:
        p = c + shape.radius() * e;
        t_t = shape.radius() * e_t;
        t_p = shape.radius() * e_p;
        break;
      case ObstacleShape::Kind::ellipsoid:
        p = c + shape.semi_axes().cwiseProduct(e);
        t_t = shape.semi_axes().cwiseProduct(e_t);
        t_p = shape.semi_axes().cwiseProduct(e_p);
        break;
      case ObstacleShape::Kind::star: {
        auto r_at = [&](double a, double b) { return shape.radial_extent(rotation * unit_direction(a, b)); };
        const double h = 1e-3;
        const double r = r_at(th, ph);
        if (!(r > 0.0)) throw GeometryError("build_mesh: radius function not positive");
        const double r_t =
            (-r_at(th + 2 * h, ph) + 8 * r_at(th + h, ph) - 8 * r_at(th - h, ph) + r_at(th - 2 * h, ph)) / (12 * h);
        const double r_p =
            (-r_at(th, ph + 2 * h) + 8 * r_at(th, ph + h) - 8 * r_at(th, ph - h) + r_at(th, ph - 2 * h)) / (12 * h);
        p = c + r * e;
        t_t = r * e_t + r_t * e;
        t_p = r * e_p + r_p * e;
        break;
      }
    }
    Vec3 n = t_t.cross(t_p);
    const double jac = n.norm();
    n /= jac;
    if (n.dot(p - c) < 0.0) n = -n;
    mesh.nodes.col(k) = p;
    mesh.normals.col(k) = n;
    // quad weight carries d(cos theta) = sin(theta) d(theta)
    mesh.weights[k] = quad.weights[k] * jac / std::sin(th);
    const double dtheta = quad.weights[k] / dphi / std::sin(th);
    mesh.spacings[k] = std::max(dtheta * t_t.norm(), dphi * t_p.norm());
  }
  return mesh;
}

Points auxiliary_surface(const SurfaceMesh& mesh, double shrink) {
  if (!(shrink > 0.0 && shrink < 1.0)) throw InvalidArgument("auxiliary_surface: shrink must lie in (0, 1)");
  const int nt = (mesh.n_theta + 1) / 2, np = (mesh.n_phi + 1) / 2;
  Points pts(3, static_cast<Eigen::Index>(nt) * np);
  const Vec3& c = mesh.shape.center();
  Eigen::Index col = 0;
  for (int i = 0; i < mesh.n_theta; i += 2) {
    for (int j = 0; j < mesh.n_phi; j += 2) {
      const Eigen::Index k = static_cast<Eigen::Index>(i) * mesh.n_phi + j;
      const Vec3 z = c + shrink * (mesh.nodes.col(k) - c);
      if (point_classification(mesh.shape, z) != PointClass::interior) {
        throw GeometryError("auxiliary_surface: source point not interior");
      }
      pts.col(col++) = z;
    }
  }
  return pts;
}

Points auxiliary_sources(const ObstacleShape& shape, int count, double shrink) {
  if (!(shrink > 0.0 && shrink < 1.0)) throw InvalidArgument("auxiliary_sources: shrink must lie in (0, 1)");
  if (count < 1) throw InvalidArgument("auxiliary_sources: count must be positive");
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  Points pts(3, count);
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Vec3 d(r * std::cos(golden * i), r * std::sin(golden * i), z);
    const Vec3 p = shape.center() + shrink * shape.radial_extent(d) * d;
    if (point_classification(shape, p) != PointClass::interior) {
      throw GeometryError("auxiliary_sources: source point not interior");
    }
    pts.col(i) = p;
  }
  return pts;
}

bool same_geometry(const ObstacleShape& a, const ObstacleShape& b) {
  if (a.kind() != b.kind() || a.center() != b.center()) return false;
  switch (a.kind()) {
    case ObstacleShape::Kind::sphere:
      return a.radius() == b.radius();
    case ObstacleShape::Kind::ellipsoid:
      return a.semi_axes() == b.semi_axes();
    case ObstacleShape::Kind::star:
      break;
  }
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].mode.n != cb[i].mode.n || ca[i].mode.m != cb[i].mode.m || ca[i].value != cb[i].value) return false;
  }
  return true;
}

bool disjoint(const ObstacleShape& a, const ObstacleShape& b) {
  return (a.center() - b.center()).norm() > a.bounding_radius() + b.bounding_radius();
}

PointClass point_classification(const ObstacleShape& shape, const Vec3& x) {
  const Vec3 rel = x - shape.center();
  const double rho = rel.norm();
  const double band = 1e-6 * shape.diameter();
  if (rho < band) return PointClass::interior;
  const double gap = rho - shape.radial_extent(rel / rho);
  if (std::abs(gap) <= band) return PointClass::near_boundary;
  return gap < 0.0 ? PointClass::interior : PointClass::exterior;
}

}  // namespace elastoscatter
