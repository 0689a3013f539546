#include "elastoscatter/layer_potentials.hpp"

#include <string>

namespace elastoscatter {

SurfaceDensity::SurfaceDensity(MeshPtr m, CFields v) : mesh(std::move(m)), values(std::move(v)) {
  if (!mesh) throw InvalidArgument("density: null mesh");
  if (values.cols() != mesh->size()) {
    throw InvalidArgument("density: " + std::to_string(values.cols()) + " values for " +
                          std::to_string(mesh->size()) + " nodes");
  }
}

SurfaceDensity SurfaceDensity::zero(MeshPtr mesh) {
  const Eigen::Index n = mesh->size();
  return SurfaceDensity(std::move(mesh), CFields::Zero(3, n));
}

void require_off_surface(const SurfaceMesh& mesh, const Vec3& x) {
  for (Eigen::Index k = 0; k < mesh.size(); ++k) {
    if ((x - mesh.nodes.col(k)).norm() < 2.0 * mesh.spacing(k)) {
      throw TooCloseError("evaluation point within two node spacings of the surface");
    }
  }
}

namespace {

CVec3 single_layer_unchecked(const SurfaceDensity& density, const Vec3& x, const Material& mat) {
  const SurfaceMesh& mesh = *density.mesh;
  CVec3 sum = CVec3::Zero();
  for (Eigen::Index k = 0; k < mesh.size(); ++k) {
    sum += mesh.weights[k] * (kupradze_tensor(x, mesh.nodes.col(k), mat) * density.values.col(k));
  }
  return sum;
}

CVec3 single_layer_traction_unchecked(const SurfaceDensity& density, const Vec3& x, const Vec3& normal,
                                      const Material& mat) {
  const SurfaceMesh& mesh = *density.mesh;
  CVec3 sum = CVec3::Zero();
  for (Eigen::Index k = 0; k < mesh.size(); ++k) {
    sum += mesh.weights[k] * (kupradze_traction(x, normal, mesh.nodes.col(k), mat) * density.values.col(k));
  }
  return sum;
}

}  // namespace

CVec3 single_layer(const SurfaceDensity& density, const Vec3& x, const Material& mat) {
  require_off_surface(*density.mesh, x);
  return single_layer_unchecked(density, x, mat);
}

CVec3 single_layer_traction(const SurfaceDensity& density, const Vec3& x, const Vec3& normal, const Material& mat) {
  require_off_surface(*density.mesh, x);
  return single_layer_traction_unchecked(density, x, normal, mat);
}

CVec3 jump_estimate(const SurfaceDensity& density, Eigen::Index node, const std::vector<double>& offsets,
                    const Material& mat) {
  const SurfaceMesh& mesh = *density.mesh;
  if (node < 0 || node >= mesh.size()) throw InvalidArgument("jump_estimate: node index out of range");
  if (offsets.size() < 2) throw InvalidArgument("jump_estimate: need at least two offsets");
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (!(offsets[i] > 0.0) || (i > 0 && !(offsets[i] < offsets[i - 1]))) {
      throw InvalidArgument("jump_estimate: offsets must be positive and decreasing");
    }
  }
  const Vec3 y = mesh.nodes.col(node);
  const Vec3 nu = mesh.normals.col(node);
  const double ha = offsets[offsets.size() - 2], hb = offsets.back();
  auto side = [&](double sign) {
    const CVec3 fa = single_layer_traction_unchecked(density, y + sign * ha * nu, nu, mat);
    const CVec3 fb = single_layer_traction_unchecked(density, y + sign * hb * nu, nu, mat);
    return CVec3((ha * fb - hb * fa) / (ha - hb));
  };
  // interior minus exterior: with outward normals this is the limit that equals phi
  return side(-1.0) - side(1.0);
}

CVec3 betti_representation(const SurfaceDensity& trace_u, const SurfaceDensity& trace_tu, const Vec3& x,
                           const Material& mat) {
  if (trace_u.mesh != trace_tu.mesh) throw InvalidArgument("betti_representation: traces on different meshes");
  const SurfaceMesh& mesh = *trace_u.mesh;
  require_off_surface(mesh, x);
  CVec3 sum = CVec3::Zero();
  for (Eigen::Index k = 0; k < mesh.size(); ++k) {
    const Vec3 y = mesh.nodes.col(k);
    const CMat3 t = kupradze_traction(y, mesh.normals.col(k), x, mat);
    sum += mesh.weights[k] * (t.transpose() * trace_u.values.col(k) - kupradze_tensor(x, y, mat) * trace_tu.values.col(k));
  }
  return sum;
}

}  // namespace elastoscatter
