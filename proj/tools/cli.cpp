#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#ifndef ELASTOSCATTER_VERSION
#define ELASTOSCATTER_VERSION "0.1.0"
#endif

namespace elastoscatter::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  const std::set<std::string> known(keys.begin(), keys.end());
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw ConfigError(join(path, item.key()), "unknown field");
  }
}

double number(const json& j, const std::string& key, const std::string& path, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(join(path, key), "must be finite");
  return d;
}

int integer(const json& j, const std::string& key, const std::string& path, int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
  return v.get<int>();
}

std::string text(const json& j, const std::string& key, const std::string& path, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
  return v.get<std::string>();
}

Vec3 vec3(const json& j, const std::string& key, const std::string& path, const Vec3& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 3) throw ConfigError(join(path, key), "expected an array of 3 numbers");
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    if (!v[static_cast<std::size_t>(i)].is_number()) throw ConfigError(join(path, key), "expected an array of 3 numbers");
    out[i] = v[static_cast<std::size_t>(i)].get<double>();
    if (!std::isfinite(out[i])) throw ConfigError(join(path, key), "must be finite");
  }
  return out;
}

Complex complex_value(const json& j, const std::string& key, const std::string& path, Complex fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(join(path, key), "expected a number or [re, im]");
}

template <typename F>
auto guarded(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    // library messages often carry their own "name: " prefix
    std::string msg = e.what();
    const auto colon = msg.find(": ");
    if (colon != std::string::npos && msg.find(' ') > colon) msg = msg.substr(colon + 2);
    throw ConfigError(path, msg);
  }
}

Material parse_material(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"lambda", "mu", "omega"});
  const double lambda = number(j, "lambda", path, 2.0), mu = number(j, "mu", path, 1.0),
               omega = number(j, "omega", path, 2.0);
  return guarded(path, [&] { return Material(lambda, mu, omega); });
}

ObstacleShape parse_shape(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string kind = text(j, "kind", path, "sphere");
  const Vec3 center = vec3(j, "center", path, Vec3::Zero());
  if (kind == "sphere") {
    reject_unknown(j, path, {"kind", "center", "radius"});
    const double r = number(j, "radius", path, 1.0);
    return guarded(join(path, "radius"), [&] { return ObstacleShape::sphere(r, center); });
  }
  if (kind == "ellipsoid") {
    reject_unknown(j, path, {"kind", "center", "semi_axes"});
    const Vec3 axes = vec3(j, "semi_axes", path, Vec3::Ones());
    return guarded(join(path, "semi_axes"), [&] { return ObstacleShape::ellipsoid(axes, center); });
  }
  if (kind == "star") {
    reject_unknown(j, path, {"kind", "center", "coefficients"});
    const std::string cpath = join(path, "coefficients");
    if (!j.contains("coefficients") || !j.at("coefficients").is_array()) throw ConfigError(cpath, "expected an array");
    std::vector<StarCoefficient> coeffs;
    std::size_t i = 0;
    for (const json& c : j.at("coefficients")) {
      const std::string p = cpath + "[" + std::to_string(i++) + "]";
      require_object(c, p);
      reject_unknown(c, p, {"n", "m", "re", "im"});
      const int n = integer(c, "n", p, 0), m = integer(c, "m", p, 0);
      const ModeIndex mode = guarded(p, [&] { return ModeIndex(n, m); });
      coeffs.push_back({mode, Complex(number(c, "re", p, 0.0), number(c, "im", p, 0.0))});
    }
    return guarded(cpath, [&] { return ObstacleShape::star(coeffs, center); });
  }
  throw ConfigError(join(path, "kind"), "expected sphere, ellipsoid or star");
}

BoundaryCondition parse_bc(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string kind = text(j, "kind", path, "dirichlet");
  if (kind == "dirichlet" || kind == "neumann") {
    reject_unknown(j, path, {"kind"});
    return kind == "dirichlet" ? BoundaryCondition::dirichlet() : BoundaryCondition::neumann();
  }
  if (kind == "robin") {
    reject_unknown(j, path, {"kind", "h"});
    const Complex h = complex_value(j, "h", path, kI);
    return guarded(join(path, "h"), [&] { return BoundaryCondition::robin(h); });
  }
  throw ConfigError(join(path, "kind"), "expected dirichlet, neumann or robin");
}

SolverParams parse_solver(const json& j, const std::string& path, SolverParams p) {
  require_object(j, path);
  reject_unknown(j, path, {"n_theta", "n_phi", "shrink", "svd_threshold", "source_count"});
  p.n_theta = integer(j, "n_theta", path, p.n_theta);
  p.n_phi = integer(j, "n_phi", path, p.n_phi);
  p.shrink = number(j, "shrink", path, p.shrink);
  p.svd_threshold = number(j, "svd_threshold", path, p.svd_threshold);
  p.source_count = integer(j, "source_count", path, p.source_count);
  if (p.n_theta < 4) throw ConfigError(join(path, "n_theta"), "must be at least 4");
  if (p.n_phi < 8) throw ConfigError(join(path, "n_phi"), "must be at least 8");
  if (!(p.shrink > 0.0 && p.shrink < 1.0)) throw ConfigError(join(path, "shrink"), "must lie in (0, 1)");
  if (!(p.svd_threshold > 0.0 && p.svd_threshold < 1.0)) {
    throw ConfigError(join(path, "svd_threshold"), "must lie in (0, 1)");
  }
  if (p.source_count < 0) throw ConfigError(join(path, "source_count"), "must be non-negative");
  return p;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json cvec_json(const CVec3& v) { return json::array({complex_json(v[0]), complex_json(v[1]), complex_json(v[2])}); }

json mat_json(const CMat3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(cvec_json(m.row(r).transpose()));
  return rows;
}

const char* relation_name(Check::Relation r) {
  switch (r) {
    case Check::Relation::below:
      return "below";
    case Check::Relation::above:
      return "above";
    case Check::Relation::within:
      break;
  }
  return "within";
}

json checks_json(const Checks& checks) {
  json arr = json::array();
  for (const Check& c : checks) {
    json item{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance},
              {"relation", relation_name(c.relation)}, {"pass", c.pass}};
    if (c.relation == Check::Relation::within) item["target"] = c.target;
    arr.push_back(item);
  }
  return arr;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

fs::path output_dir(const ExperimentConfig& config) {
  const fs::path dir(config.output_directory);
  fs::create_directories(dir);
  return dir;
}

SystemPtr build_system(const ObstacleConfig& o, const Material& mat) { return make_system(o.shape, o.bc, mat, o.solver); }

bool same_problem(const ObstacleConfig& a, const ObstacleConfig& b) {
  const SolverParams &p = a.solver, &q = b.solver;
  return same_geometry(a.shape, b.shape) && a.bc.kind == b.bc.kind && a.bc.h == b.bc.h && p.n_theta == q.n_theta &&
         p.n_phi == q.n_phi && p.shrink == q.shrink && p.svd_threshold == q.svd_threshold &&
         p.source_count == q.source_count;
}

// Identical problems share one factored system.
std::pair<SystemPtr, SystemPtr> build_pair(const ExperimentConfig& config) {
  const SystemPtr first = build_system(config.obstacles[0], config.material);
  const SystemPtr second =
      same_problem(config.obstacles[0], config.obstacles[1]) ? first : build_system(config.obstacles[1], config.material);
  return {first, second};
}

void require_obstacles(const ExperimentConfig& config, std::size_t n, const char* command) {
  if (config.obstacles.size() != n) {
    throw ConfigError("obstacles", std::string(command) + " needs exactly " + std::to_string(n) + " obstacle(s)");
  }
}

int cmd_verify(const std::string& suite, const ExperimentConfig& config, std::ostream& out) {
  const Checks checks = run_suite(suite, config);
  const bool pass = all_pass(checks);
  const json report{{"suite", suite}, {"pass", pass}, {"checks", checks_json(checks)}};
  const fs::path file = output_dir(config) / ("verify_" + suite + ".json");
  write_text(file, report.dump(2) + "\n");
  for (const Check& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-52s %.6g (%s %.3g)\n", c.pass ? "ok" : "FAIL", c.name.c_str(), c.value,
                  relation_name(c.relation), c.tolerance);
    out << line;
  }
  out << "verify " << suite << ": " << (pass ? "pass" : "FAIL") << ", report " << file.string() << "\n";
  return pass ? 0 : 1;
}

std::string pattern_csv(const Points& dirs, const CFields& values) {
  std::string s = "theta,phi,re_x,im_x,re_y,im_y,re_z,im_z\n";
  for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
    const Vec3 d = dirs.col(i);
    const double theta = std::acos(std::clamp(d[2], -1.0, 1.0));
    double phi = std::atan2(d[1], d[0]);
    if (phi < 0.0) phi += 2.0 * kPi;
    s += format_double(theta) + "," + format_double(phi);
    for (int c = 0; c < 3; ++c) s += "," + format_double(values(c, i).real()) + "," + format_double(values(c, i).imag());
    s += "\n";
  }
  return s;
}

int cmd_farfield(const ExperimentConfig& config, std::ostream& out) {
  require_obstacles(config, 1, "farfield");
  const SystemPtr system = build_system(config.obstacles[0], config.material);
  const auto sol = solve(system, IncidentField::plane(config.incident));
  const Points dirs = direction_grid(config.farfield_n_theta, config.farfield_n_phi);
  const PatternPair pats = farfield_from_sources(sol, dirs);
  const FarFieldPattern full = pats.full();

  // everything is computed before any file is written
  std::vector<std::pair<fs::path, std::string>> files;
  const fs::path dir = output_dir(config);
  if (config.write_csv) {
    files.emplace_back(dir / "farfield_p.csv", pattern_csv(dirs, pats.p.values));
    files.emplace_back(dir / "farfield_s.csv", pattern_csv(dirs, pats.s.values));
    files.emplace_back(dir / "farfield_full.csv", pattern_csv(dirs, full.values));
  }
  if (config.write_json) {
    const FarFieldMatrix m = farfield_matrix(system, config.incident.direction, dirs, config.incident.kind);
    json entries = json::object();
    for (Eigen::Index i = 0; i < dirs.cols(); ++i) {
      entries[std::to_string(i)] = {{"direction", vec_json(dirs.col(i))}, {"p", mat_json(m.p[i])}, {"s", mat_json(m.s[i])}};
    }
    const json doc{{"alpha", vec_json(m.alpha)}, {"count", dirs.cols()}, {"directions", entries}};
    files.emplace_back(dir / "farfield_matrix.json", doc.dump(1) + "\n");
  }
  const json meta{{"version", ELASTOSCATTER_VERSION},
                  {"config", config.source},
                  {"residual", {{"max_abs", sol.residual.max_abs}, {"relative", sol.residual.relative}}},
                  {"rank", system->rank()},
                  {"unknowns", system->unknowns()},
                  {"condition_estimate", system->condition_estimate()},
                  {"directions", {{"n_theta", config.farfield_n_theta}, {"n_phi", config.farfield_n_phi},
                                  {"count", dirs.cols()}}}};
  files.emplace_back(dir / "farfield_metadata.json", meta.dump(2) + "\n");

  std::vector<fs::path> written;
  try {
    for (const auto& [path, content] : files) {
      write_text(path, content);
      written.push_back(path);
    }
  } catch (...) {
    for (const fs::path& p : written) fs::remove(p);
    throw;
  }
  out << "farfield: " << dirs.cols() << " directions, held-out residual " << sol.residual.relative << ", files in "
      << dir.string() << "\n";
  return 0;
}

int cmd_uniqueness(const ExperimentConfig& config, std::ostream& out) {
  require_obstacles(config, 2, "uniqueness");
  const auto [first, second] = build_pair(config);
  const PatternComparison r = compare_farfields(first, second, config.incident, config.cap_axis,
                                                config.cap_half_angle, config.farfield_n_theta, config.farfield_n_phi);
  const double ratio = r.error_bound > 0.0 ? r.relative_distance / r.error_bound : INFINITY;
  const json report{{"directions", r.directions},
                    {"cap_half_angle_deg", config.cap_half_angle * 180.0 / kPi},
                    {"sup_distance", r.sup_distance},
                    {"l2_distance", r.l2_distance},
                    {"relative_distance", r.relative_distance},
                    {"pattern_scale", r.pattern_scale},
                    {"residuals", {r.residuals[0], r.residuals[1]}},
                    {"route_deviations", {r.route_deviations[0], r.route_deviations[1]}},
                    {"error_bound", r.error_bound},
                    {"distance_over_bound", std::isfinite(ratio) ? json(ratio) : json(nullptr)},
                    {"separated", r.relative_distance > 10.0 * r.error_bound},
                    {"indistinguishable", r.relative_distance < 2.0 * r.error_bound}};
  const fs::path file = output_dir(config) / "uniqueness_report.json";
  write_text(file, report.dump(2) + "\n");
  out << "uniqueness: relative distance " << r.relative_distance << ", error bound " << r.error_bound
      << ", report " << file.string() << "\n";
  return 0;
}

int cmd_diff_identity(const ExperimentConfig& config, const Vec3& x, const Vec3& y, std::ostream& out) {
  require_obstacles(config, 2, "diff-identity");
  // the boundary integral runs over both surfaces at once; uniqueness compares separate problems
  if (!same_geometry(config.obstacles[0].shape, config.obstacles[1].shape) &&
      !disjoint(config.obstacles[0].shape, config.obstacles[1].shape)) {
    throw ConfigError("obstacles", "the two obstacles must be disjoint (center distance > sum of bounding radii) or identical");
  }
  for (const ObstacleConfig& o : config.obstacles) {
    if (point_classification(o.shape, x) != PointClass::exterior) throw ConfigError("--x", "must lie outside both obstacles");
    if (point_classification(o.shape, y) != PointClass::exterior) throw ConfigError("--y", "must lie outside both obstacles");
  }
  if (x == y) throw ConfigError("--y", "must differ from --x");
  const auto [first, second] = build_pair(config);
  const DifferenceIdentityReport r = difference_identity(first, second, x, y, config.incident.polarization);
  const json report{{"x", vec_json(x)},
                    {"y", vec_json(y)},
                    {"eta", vec_json(config.incident.polarization)},
                    {"lhs", cvec_json(r.lhs)},
                    {"rhs", cvec_json(r.rhs)},
                    {"componentwise_mismatch", vec_json(r.componentwise)},
                    {"mismatch", r.mismatch},
                    {"max_solver_residual", r.max_residual},
                    {"free_space_scale", r.reference}};
  const fs::path file = output_dir(config) / "diff_identity_report.json";
  write_text(file, report.dump(2) + "\n");
  out << "diff-identity: |lhs| " << r.lhs.norm() << ", |lhs - rhs| " << (r.lhs - r.rhs).norm() << ", mismatch "
      << r.mismatch << ", report " << file.string() << "\n";
  return 0;
}

std::vector<Vec3> betti_points(const ObstacleShape& shape) {
  std::vector<Vec3> pts;
  for (const Vec3& v : {Vec3(2, 0, 0), Vec3(0, 3, 0), Vec3(1, 1, 1.5), Vec3(-2, 1, 0), Vec3(0, 0, -4)}) {
    pts.push_back(shape.center() + shape.bounding_radius() * v);
  }
  return pts;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  require_object(doc, "");
  reject_unknown(doc, "", {"material", "obstacles", "incident", "solver", "outputs", "farfield", "uniqueness", "seed"});
  ExperimentConfig c;
  c.source = doc;
  if (doc.contains("material")) c.material = parse_material(doc.at("material"), "material");

  SolverParams global;
  if (doc.contains("solver")) global = parse_solver(doc.at("solver"), "solver", global);

  c.obstacles.clear();
  if (doc.contains("obstacles")) {
    const json& arr = doc.at("obstacles");
    if (!arr.is_array() || arr.empty() || arr.size() > 2) {
      throw ConfigError("obstacles", "expected an array of 1 or 2 obstacles");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = "obstacles[" + std::to_string(i) + "]";
      require_object(arr[i], p);
      reject_unknown(arr[i], p, {"shape", "bc", "solver"});
      ObstacleConfig o;
      if (arr[i].contains("shape")) o.shape = parse_shape(arr[i].at("shape"), p + ".shape");
      if (arr[i].contains("bc")) o.bc = parse_bc(arr[i].at("bc"), p + ".bc");
      o.solver = arr[i].contains("solver") ? parse_solver(arr[i].at("solver"), p + ".solver", global) : global;
      c.obstacles.push_back(o);
    }
  } else {
    c.obstacles.push_back(ObstacleConfig{ObstacleShape::sphere(1.0), BoundaryCondition::dirichlet(), global});
  }
  if (doc.contains("incident")) {
    const json& j = doc.at("incident");
    require_object(j, "incident");
    reject_unknown(j, "incident", {"kind", "alpha", "eta", "wave"});
    if (text(j, "kind", "incident", "plane") != "plane") throw ConfigError("incident.kind", "only plane is supported");
    const std::string wave = text(j, "wave", "incident", "full");
    WaveKind kind = WaveKind::full;
    if (wave == "pressure") {
      kind = WaveKind::pressure;
    } else if (wave == "shear") {
      kind = WaveKind::shear;
    } else if (wave != "full") {
      throw ConfigError("incident.wave", "expected full, pressure or shear");
    }
    const Vec3 alpha = vec3(j, "alpha", "incident", Vec3::UnitZ());
    const Vec3 eta = vec3(j, "eta", "incident", Vec3::UnitZ());
    c.incident = guarded("incident.alpha", [&] { return PlaneWave(alpha, eta, kind); });
  }

  if (doc.contains("outputs")) {
    const json& j = doc.at("outputs");
    require_object(j, "outputs");
    reject_unknown(j, "outputs", {"directory", "formats"});
    c.output_directory = text(j, "directory", "outputs", c.output_directory);
    if (c.output_directory.empty()) throw ConfigError("outputs.directory", "must not be empty");
    if (j.contains("formats")) {
      const json& f = j.at("formats");
      if (!f.is_array()) throw ConfigError("outputs.formats", "expected an array of strings");
      c.write_csv = c.write_json = false;
      for (const json& v : f) {
        const std::string s = v.is_string() ? v.get<std::string>() : "";
        if (s == "csv") {
          c.write_csv = true;
        } else if (s == "json") {
          c.write_json = true;
        } else {
          throw ConfigError("outputs.formats", "entries must be \"csv\" or \"json\"");
        }
      }
    }
  }

  if (doc.contains("farfield")) {
    const json& j = doc.at("farfield");
    require_object(j, "farfield");
    reject_unknown(j, "farfield", {"n_theta", "n_phi"});
    c.farfield_n_theta = integer(j, "n_theta", "farfield", c.farfield_n_theta);
    c.farfield_n_phi = integer(j, "n_phi", "farfield", c.farfield_n_phi);
    if (c.farfield_n_theta < 1) throw ConfigError("farfield.n_theta", "must be positive");
    if (c.farfield_n_phi < 1) throw ConfigError("farfield.n_phi", "must be positive");
  }

  if (doc.contains("uniqueness")) {
    const json& j = doc.at("uniqueness");
    require_object(j, "uniqueness");
    reject_unknown(j, "uniqueness", {"cap_half_angle_deg", "cap_axis"});
    const double deg = number(j, "cap_half_angle_deg", "uniqueness", 30.0);
    if (!(deg > 0.0 && deg <= 180.0)) throw ConfigError("uniqueness.cap_half_angle_deg", "must lie in (0, 180]");
    c.cap_half_angle = deg * kPi / 180.0;
    c.cap_axis = vec3(j, "cap_axis", "uniqueness", c.cap_axis);
    if (c.cap_axis.norm() == 0.0) throw ConfigError("uniqueness.cap_axis", "must be non-zero");
  }

  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("--config", "cannot read " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Checks run_suite(const std::string& suite, const ExperimentConfig& config) {
  const Material& mat = config.material;
  const ObstacleConfig& obstacle = config.obstacles.front();
  const PlaneWave& wave = config.incident;
  Checks out;
  if (suite == "kernels") {
    append(out, kernel_symmetry_checks(mat, 100, config.seed));
    append(out, kernel_navier_checks(mat));
    append(out, traction_form_checks(mat, 100, config.seed + 1));
    append(out, plane_wave_checks(mat, config.seed + 2));
  } else if (suite == "potentials") {
    append(out, single_layer_checks(mat, config.seed + 3));
    append(out, jump_checks(mat, {32, 48}, {0.3, 0.2, 0.1}));
    append(out, betti_checks(build_system(obstacle, mat), wave, betti_points(obstacle.shape)));
  } else if (suite == "solver") {
    append(out, solver_residual_checks(obstacle.shape, mat, obstacle.solver, wave, 60.0));
    const SystemPtr system = build_system(obstacle, mat);
    append(out, solver_property_checks(system, wave));
    append(out, green_checks(system, 5, config.seed + 4));
  } else if (suite == "farfield") {
    const SystemPtr system = build_system(obstacle, mat);
    append(out, farfield_route_checks(system, wave));
    append(out, farfield_structure_checks(system, wave.direction));
    append(out, green_asymptotics_checks(system, wave.direction, wave.polarization, {20.0, 40.0, 80.0}));
  } else if (suite == "rellich") {
    append(out, rellich_synthetic_checks(mat));
    append(out, rellich_purity_checks(build_system(obstacle, mat), wave));
  } else {
    throw ConfigError("suite", "expected kernels, potentials, solver, farfield or rellich");
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elastic scattering by fundamental-solution collocation", "elastoscatter"};
  app.require_subcommand(1);
  std::string config_path, suite;
  std::vector<double> xs, ys;

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "kernels, potentials, solver, farfield or rellich")->required();
  verify->add_option("--config", config_path, "JSON configuration")->required();
  auto* farfield = app.add_subcommand("farfield", "Far-field patterns and matrices");
  farfield->add_option("--config", config_path, "JSON configuration")->required();
  auto* uniqueness = app.add_subcommand("uniqueness", "Far-field distance between two obstacles");
  uniqueness->add_option("--config", config_path, "JSON configuration")->required();
  auto* diff = app.add_subcommand("diff-identity", "Green tensor difference identity");
  diff->add_option("--config", config_path, "JSON configuration")->required();
  diff->add_option("--x", xs, "test point")->expected(3)->required();
  diff->add_option("--y", ys, "source point")->expected(3)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    const ExperimentConfig config = load_config(config_path);
    if (verify->parsed()) return cmd_verify(suite, config, out);
    if (farfield->parsed()) return cmd_farfield(config, out);
    if (uniqueness->parsed()) return cmd_uniqueness(config, out);
    return cmd_diff_identity(config, Vec3(xs[0], xs[1], xs[2]), Vec3(ys[0], ys[1], ys[2]), out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace elastoscatter::cli
