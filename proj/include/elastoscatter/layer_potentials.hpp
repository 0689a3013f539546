#pragma once

#include <vector>

#include "elastoscatter/elastodynamics.hpp"
#include "elastoscatter/surface.hpp"

namespace elastoscatter {

/// Vector density sampled at the nodes of a mesh.
struct SurfaceDensity {
  MeshPtr mesh;
  CFields values;

  /// Throws InvalidArgument if the column count differs from the node count.
  SurfaceDensity(MeshPtr mesh, CFields values);

  static SurfaceDensity zero(MeshPtr mesh);
};

/// Throws TooCloseError when x lies within two local node spacings of any node.
void require_off_surface(const SurfaceMesh& mesh, const Vec3& x);

/// V(phi)(x) = sum_k w_k U(x, y_k) phi_k.
CVec3 single_layer(const SurfaceDensity& density, const Vec3& x, const Material& mat);

/// T_nu V(phi) at x for the given unit normal.
CVec3 single_layer_traction(const SurfaceDensity& density, const Vec3& x, const Vec3& normal, const Material& mat);

/// Traction jump of V(phi) at a node: interior limit minus exterior limit
/// (Kupradze's "+" side is the interior), which tends to phi(node). Each side is
/// sampled at node -+ h nu for the given decreasing offsets and extrapolated
/// linearly to h = 0 from the two smallest. No too-close check here.
CVec3 jump_estimate(const SurfaceDensity& density, Eigen::Index node, const std::vector<double>& offsets,
                    const Material& mat);

/// Betti representation integral
///   sum_k w_k [ (T_{nu(y_k)} U(x, y_k))^T u_k - U(x, y_k) (T u)_k ].
/// Reproduces a radiating solution at exterior x and vanishes for an entire
/// solution when x is outside the surface.
CVec3 betti_representation(const SurfaceDensity& trace_u, const SurfaceDensity& trace_tu, const Vec3& x,
                           const Material& mat);

}  // namespace elastoscatter
