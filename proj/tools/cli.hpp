#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "elastoscatter/verification.hpp"
#include "json.hpp"

namespace elastoscatter::cli {

/// Invalid configuration; the message starts with the offending field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ObstacleConfig {
  ObstacleShape shape = ObstacleShape::sphere(1.0);
  BoundaryCondition bc = BoundaryCondition::dirichlet();
  SolverParams solver;
};

struct ExperimentConfig {
  Material material{2.0, 1.0, 2.0};
  std::vector<ObstacleConfig> obstacles{ObstacleConfig{}};
  PlaneWave incident{Vec3::UnitZ(), Vec3::UnitZ()};
  std::string output_directory = "elastoscatter_out";
  bool write_csv = true;
  bool write_json = true;
  int farfield_n_theta = 24;
  int farfield_n_phi = 48;
  Vec3 cap_axis = Vec3::UnitZ();
  double cap_half_angle = kPi / 6.0;
  std::uint64_t seed = 20240611;
  nlohmann::json source = nlohmann::json::object();
};

/// Missing sections take defaults; unknown keys and invalid values throw ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);
/// Reads and parses a JSON file; unreadable or malformed files throw ConfigError.
ExperimentConfig load_config(const std::string& path);

/// 17 significant digits.
std::string format_double(double v);

/// Verification suite by name: kernels, potentials, solver, farfield, rellich.
Checks run_suite(const std::string& suite, const ExperimentConfig& config);

/// Entry point: 0 success, 1 numerical failure, 2 configuration or usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace elastoscatter::cli
