#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elastoscatter/experiments.hpp"

namespace elastoscatter {

/// One measured quantity against its tolerance.
struct Check {
  enum class Relation { below, above, within };  // value < tol, value > tol, |value - target| <= tol

  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::below;
  double target = 0.0;
  bool pass = false;
};

Check check_below(std::string name, double value, double tolerance);
Check check_above(std::string name, double value, double tolerance);
Check check_within(std::string name, double value, double target, double tolerance);

using Checks = std::vector<Check>;

bool all_pass(const Checks& checks);
void append(Checks& to, const Checks& from);

// Kernels

/// Transpose and argument-swap symmetry of U on random pairs in [-2, 2]^3.
Checks kernel_symmetry_checks(const Material& mat, int pairs, std::uint64_t seed);
/// Richardson order of the FD Navier residual of each column of U at |x - y| = 1.
Checks kernel_navier_checks(const Material& mat);
/// The two traction forms on random Jacobians and normals.
Checks traction_form_checks(const Material& mat, int samples, std::uint64_t seed);
/// Parallel/orthogonal parts, FD Navier residual and degenerate polarizations.
Checks plane_wave_checks(const Material& mat, std::uint64_t seed);

// Layer potentials

/// Weighted L2 error of the traction jump of V(nu) on unit spheres of each
/// resolution, plus the improvement ratio between the first and last.
Checks jump_checks(const Material& mat, const std::vector<int>& n_thetas, const std::vector<double>& offsets);
/// Linearity, decay and Navier residual of a single-layer potential.
Checks single_layer_checks(const Material& mat, std::uint64_t seed);

// Solver

/// Held-out residuals of Dirichlet, Neumann and Robin(h = i) solves for the
/// incident wave; each solve (system build included) is also timed.
Checks solver_residual_checks(const ObstacleShape& shape, const Material& mat, const SolverParams& params,
                              const PlaneWave& wave, double seconds_per_solve);
/// Zero incidence, linearity in eta, exterior Navier residual, radiation slopes,
/// Helmholtz split and the non-vanishing of the far energy.
Checks solver_property_checks(const SystemPtr& system, const PlaneWave& wave);
/// Betti reproduction of the scattered field at exterior points.
Checks betti_checks(const SystemPtr& system, const PlaneWave& wave, const std::vector<Vec3>& points);
/// Reciprocity of G on random exterior pairs and the boundary value of G.
Checks green_checks(const SystemPtr& system, int pairs, std::uint64_t seed);

// Far field

/// Source-sum vs boundary-integral routes and the O(1/r^2) remainder slope.
Checks farfield_route_checks(const SystemPtr& system, const PlaneWave& wave);
/// Pattern invariants, matrix linearity, P + S decomposition and block split.
Checks farfield_structure_checks(const SystemPtr& system, const Vec3& alpha);
/// sigma^2-scaled residuals of the Green asymptotics and their consecutive ratios.
Checks green_asymptotics_checks(const SystemPtr& system, const Vec3& alpha, const Vec3& eta,
                                const std::vector<double>& sigmas);

// Mode analysis

/// Synthetic outgoing/incoming fields and the zero field.
Checks rellich_synthetic_checks(const Material& mat);
/// Outgoing purity of a solver scattered field.
Checks rellich_purity_checks(const SystemPtr& system, const PlaneWave& wave);

}  // namespace elastoscatter
