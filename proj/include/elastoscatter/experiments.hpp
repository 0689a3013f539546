#pragma once

#include <array>

#include "elastoscatter/farfield.hpp"

namespace elastoscatter {

/// Far-field distance between two obstacles for one incident plane wave on a
/// polar cap of directions. Distances are relative to the larger sup-norm of
/// the two patterns; the error bound adds, per obstacle, the relative held-out
/// residual and the relative discrepancy between the two far-field routes.
struct PatternComparison {
  Eigen::Index directions = 0;
  double sup_distance = 0.0;
  double l2_distance = 0.0;  // quadrature over the cap
  double relative_distance = 0.0;
  double pattern_scale = 0.0;
  std::array<double, 2> residuals{};
  std::array<double, 2> route_deviations{};
  double error_bound = 0.0;
};

PatternComparison compare_farfields(const SystemPtr& first, const SystemPtr& second, const PlaneWave& wave,
                                    const Vec3& cap_axis, double half_angle, int n_theta, int n_phi);

/// Both sides of
///   G1(x,y) eta - G2(x,y) eta
///     = int_{dD1 u dD2} (T G2(w,x))^T G1(w,y) eta - G2(w,x)^T T G1(w,y) eta ds(w)
/// with G1, G2 the Green tensors of the two systems and outward normals.
/// Identical obstacles integrate over the one boundary; otherwise the
/// obstacles must be disjoint.
struct DifferenceIdentityReport {
  CVec3 lhs = CVec3::Zero();
  CVec3 rhs = CVec3::Zero();
  Vec3 componentwise = Vec3::Zero();  // |lhs_i - rhs_i| / max_j |lhs_j|
  double mismatch = 0.0;              // |lhs - rhs| / |lhs|, 0 when both vanish
  double max_residual = 0.0;          // largest relative residual of the point-source solves
  double reference = 0.0;             // |U(x, y) eta|, free-space scale for vanishing sides
};

DifferenceIdentityReport difference_identity(const SystemPtr& first, const SystemPtr& second, const Vec3& x,
                                             const Vec3& y, const Vec3& eta);

}  // namespace elastoscatter
