#pragma once

#include <memory>
#include <vector>

#include "elastoscatter/special_functions.hpp"
#include "elastoscatter/types.hpp"

namespace elastoscatter {

struct StarCoefficient {
  ModeIndex mode;
  Complex value;
};

/// Closed star-shaped obstacle boundary. Every shape is described by the
/// boundary point hit by the ray from its center in a given unit direction.
class ObstacleShape {
 public:
  enum class Kind { sphere, ellipsoid, star };

  static ObstacleShape sphere(double radius, const Vec3& center = Vec3::Zero());
  static ObstacleShape ellipsoid(const Vec3& semi_axes, const Vec3& center = Vec3::Zero());
  /// Radius function r(d) = Re sum c_nm Y_n^m(d); must be positive everywhere.
  static ObstacleShape star(std::vector<StarCoefficient> coefficients, const Vec3& center = Vec3::Zero());

  Kind kind() const { return kind_; }
  const Vec3& center() const { return center_; }
  double radius() const { return radius_; }
  const Vec3& semi_axes() const { return semi_axes_; }
  const std::vector<StarCoefficient>& coefficients() const { return coefficients_; }

  /// Distance from the center to the boundary along unit direction d.
  double radial_extent(const Vec3& d) const;
  /// Upper bound on |x - center| over the boundary.
  double bounding_radius() const { return bounding_radius_; }
  double diameter() const { return 2.0 * bounding_radius_; }

  /// Same geometry shifted to a new center.
  ObstacleShape translated(const Vec3& new_center) const;

 private:
  ObstacleShape() = default;

  Kind kind_ = Kind::sphere;
  Vec3 center_ = Vec3::Zero();
  double radius_ = 1.0;
  Vec3 semi_axes_ = Vec3::Ones();
  std::vector<StarCoefficient> coefficients_;
  double bounding_radius_ = 1.0;
};

/// Product-rule surface mesh. Node k = i * n_phi + j for polar index i and
/// azimuthal index j; `rotation` is applied to the parameter directions, so a
/// rotated mesh samples the same surface at different points.
struct SurfaceMesh {
  ObstacleShape shape;
  int n_theta = 0;
  int n_phi = 0;
  Mat3 rotation = Mat3::Identity();
  Points nodes;
  Points normals;  // unit, outward
  Eigen::VectorXd weights;
  // Larger of the two parametric arc widths of each node's cell. Equals
  // sqrt(weight) on square cells and stays honest near the poles.
  Eigen::VectorXd spacings;

  Eigen::Index size() const { return nodes.cols(); }
  double area() const { return weights.sum(); }
  double spacing(Eigen::Index k) const { return spacings[k]; }
};

using MeshPtr = std::shared_ptr<const SurfaceMesh>;

SurfaceMesh build_mesh(const ObstacleShape& shape, int n_theta, int n_phi, const Mat3& rotation = Mat3::Identity());

/// Fixed generic rotation used for held-out node sets.
Mat3 held_out_rotation();

/// center + shrink (node - center) for every other node in both parameter directions.
Points auxiliary_surface(const SurfaceMesh& mesh, double shrink);

/// count points center + shrink r(d) d over a Fibonacci spiral of directions d.
Points auxiliary_sources(const ObstacleShape& shape, int count, double shrink);

/// Exact equality of kind, parameters and center.
bool same_geometry(const ObstacleShape& a, const ObstacleShape& b);
/// Center distance exceeds the sum of bounding radii.
bool disjoint(const ObstacleShape& a, const ObstacleShape& b);

enum class PointClass { interior, exterior, near_boundary };

/// Near-boundary band has width 1e-6 times the diameter.
PointClass point_classification(const ObstacleShape& shape, const Vec3& x);

}  // namespace elastoscatter
