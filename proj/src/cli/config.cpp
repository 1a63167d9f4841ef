#include "cdpr/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace cdpr {

ConfigError::ConfigError(const std::string& source, int line, int column,
                         const std::string& field, const std::string& message)
    : Error(source + (line > 0 ? ":" + std::to_string(line) + ":" + std::to_string(column)
                               : std::string()) +
            ": " + (field.empty() ? message : field + ": " + message)),
      line_(line),
      column_(column),
      field_(field) {}

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field,
                         const std::string& message) const {
    int line = 0;
    int column = 0;
    if (node.IsDefined()) {
      const YAML::Mark mark = node.Mark();
      if (mark.line >= 0) {
        line = mark.line + 1;
        column = mark.column + 1;
      }
    }
    throw ConfigError(source_, line, column, field, message);
  }

  void check_keys(const YAML::Node& node, const std::string& field,
                  const std::set<std::string>& allowed) const {
    if (!node.IsMap()) fail(node, field, "expected a mapping");
    for (auto it = node.begin(); it != node.end(); ++it) {
      const auto key = it->first.as<std::string>();
      if (!allowed.count(key)) {
        fail(it->first, field.empty() ? key : field + "." + key, "unknown key");
      }
    }
  }

  YAML::Node require(const YAML::Node& node, const std::string& key,
                     const std::string& field) const {
    const YAML::Node child = node[key];
    if (!child.IsDefined() || child.IsNull()) {
      fail(node, field.empty() ? key : field + "." + key, "missing required key");
    }
    return child;
  }

  double number(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a number");
    try {
      return node.as<double>();
    } catch (const YAML::Exception&) {
      fail(node, field, "expected a number, got '" + node.Scalar() + "'");
    }
  }

  int integer(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected an integer");
    try {
      return node.as<int>();
    } catch (const YAML::Exception&) {
      fail(node, field, "expected an integer, got '" + node.Scalar() + "'");
    }
  }

  std::string text(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a string");
    return node.Scalar();
  }

  Eigen::VectorXd vector(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a list of numbers");
    Eigen::VectorXd v(static_cast<Eigen::Index>(node.size()));
    for (std::size_t i = 0; i < node.size(); ++i) {
      v[static_cast<Eigen::Index>(i)] =
          number(node[i], field + "[" + std::to_string(i) + "]");
    }
    return v;
  }

  std::vector<Eigen::VectorXd> points(const YAML::Node& node, const std::string& field,
                                      int dim) const {
    if (!node.IsSequence()) fail(node, field, "expected a list of points");
    std::vector<Eigen::VectorXd> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      const std::string f = field + "[" + std::to_string(i) + "]";
      Eigen::VectorXd p = vector(node[i], f);
      if (p.size() != dim) {
        fail(node[i], f, "expected " + std::to_string(dim) + " coordinates");
      }
      out.push_back(std::move(p));
    }
    return out;
  }

 private:
  std::string source_;
};

RobotGeometry read_robot(const Reader& r, const YAML::Node& node) {
  r.check_keys(node, "robot", {"class", "mass", "gravity", "anchors", "attachments"});
  const YAML::Node cls_node = r.require(node, "class", "robot");
  const auto cls = parse_robot_class(r.text(cls_node, "robot.class"));
  if (!cls) {
    r.fail(cls_node, "robot.class",
           "expected planar_point_mass, spatial_point_mass or spatial_rigid_body");
  }
  const int d = translational_dimension(*cls);
  const double mass = r.number(r.require(node, "mass", "robot"), "robot.mass");
  if (!(mass > 0.0)) r.fail(node["mass"], "robot.mass", "must be positive");

  Eigen::VectorXd gravity = Eigen::VectorXd::Zero(d);
  gravity[d - 1] = -9.81;
  if (node["gravity"]) {
    gravity = r.vector(node["gravity"], "robot.gravity");
    if (gravity.size() != d) {
      r.fail(node["gravity"], "robot.gravity", "expected " + std::to_string(d) + " components");
    }
  }
  auto anchors = r.points(r.require(node, "anchors", "robot"), "robot.anchors", d);
  std::vector<Eigen::VectorXd> attachments;
  if (node["attachments"]) {
    attachments = r.points(node["attachments"], "robot.attachments", d);
  } else if (*cls == RobotClass::SpatialRigidBody) {
    r.fail(node, "robot.attachments", "required for spatial_rigid_body robots");
  }
  try {
    return RobotGeometry(*cls, std::move(anchors), std::move(attachments), mass, gravity);
  } catch (const GeometryError& e) {
    r.fail(node, "robot", e.what());
  }
}

TensionBounds read_bounds(const Reader& r, const YAML::Node& node, int cables) {
  r.check_keys(node, "bounds", {"lower", "upper"});
  auto side = [&](const char* key) {
    const std::string field = std::string("bounds.") + key;
    const YAML::Node n = r.require(node, key, "bounds");
    if (n.IsScalar()) return Eigen::VectorXd::Constant(cables, r.number(n, field)).eval();
    Eigen::VectorXd v = r.vector(n, field);
    if (v.size() != cables) {
      r.fail(n, field, "expected a scalar or " + std::to_string(cables) + " values");
    }
    return v;
  };
  const Eigen::VectorXd lower = side("lower");
  const Eigen::VectorXd upper = side("upper");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] > 0.0)) r.fail(node["lower"], "bounds.lower", "must be strictly positive");
    if (!(lower[i] < upper[i])) {
      r.fail(node["upper"], "bounds", "lower bound must be strictly below upper bound (cable " +
                                          std::to_string(i + 1) + ")");
    }
  }
  return TensionBounds(lower, upper);
}

PickPlaceTask read_task(const Reader& r, const YAML::Node& node, const RobotGeometry& robot) {
  r.check_keys(node, "task", {"waypoints", "durations", "eta"});
  const int d = robot.translational_dim();
  PickPlaceTask task;

  const YAML::Node wp = r.require(node, "waypoints", "task");
  r.check_keys(wp, "task.waypoints", {"A", "B", "C", "D"});
  Eigen::VectorXd* slots[] = {&task.a, &task.b, &task.c, &task.d};
  const char* names[] = {"A", "B", "C", "D"};
  for (int k = 0; k < 4; ++k) {
    const std::string field = std::string("task.waypoints.") + names[k];
    const YAML::Node p = r.require(wp, names[k], "task.waypoints");
    *slots[k] = r.vector(p, field);
    if (slots[k]->size() != d) r.fail(p, field, "expected " + std::to_string(d) + " coordinates");
    try {
      (void)cable_geometry(robot, Pose::at(*slots[k]));
    } catch (const GeometryError& e) {
      r.fail(p, field, e.what());
    }
  }

  const YAML::Node dur = r.require(node, "durations", "task");
  r.check_keys(dur, "task.durations", {"pick", "move", "place", "pause"});
  auto duration = [&](const char* key, double* out, bool allow_zero) {
    const std::string field = std::string("task.durations.") + key;
    const YAML::Node n = r.require(dur, key, "task.durations");
    *out = r.number(n, field);
    if (allow_zero ? !(*out >= 0.0) : !(*out > 0.0)) {
      r.fail(n, field, allow_zero ? "must be non-negative" : "must be positive");
    }
  };
  duration("pick", &task.pick, false);
  duration("move", &task.move, false);
  duration("place", &task.place, false);
  duration("pause", &task.pause, true);

  if (node["eta"]) {
    const Eigen::VectorXd eta = r.vector(node["eta"], "task.eta");
    if (eta.size() != 4) r.fail(node["eta"], "task.eta", "expected 4 breakpoints");
    for (int k = 0; k < 4; ++k) {
      if (!(eta[k] > 0.0 && eta[k] < 1.0)) {
        r.fail(node["eta"][k], "task.eta[" + std::to_string(k) + "]",
               "must lie in the open interval (0, 1)");
      }
      task.eta[k] = eta[k];
    }
  }
  return task;
}

std::vector<SolverSpec> read_solvers(const Reader& r, const YAML::Node& node,
                                     const RobotGeometry& robot) {
  if (!node.IsSequence() || node.size() == 0) {
    r.fail(node, "solvers", "expected a non-empty list of solvers");
  }
  std::vector<SolverSpec> out;
  std::set<Method> seen;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string field = "solvers[" + std::to_string(i) + "]";
    const YAML::Node s = node[i];
    r.check_keys(s, field,
                 {"name", "tolerance", "max_iterations", "armijo_slope", "backtrack_shrink",
                  "cost"});
    const YAML::Node name = r.require(s, "name", field);
    const auto method = parse_method(r.text(name, field + ".name"));
    if (!method) r.fail(name, field + ".name", "expected one of acs, ac, apc, qp, lp");
    if (!seen.insert(*method).second) r.fail(name, field + ".name", "solver listed twice");

    SolverSpec spec;
    spec.method = *method;
    if (s["tolerance"]) {
      spec.config.tolerance = r.number(s["tolerance"], field + ".tolerance");
      if (!(spec.config.tolerance > 0.0)) {
        r.fail(s["tolerance"], field + ".tolerance", "must be positive");
      }
    }
    if (s["max_iterations"]) {
      spec.config.max_iterations = r.integer(s["max_iterations"], field + ".max_iterations");
      if (spec.config.max_iterations < 1) {
        r.fail(s["max_iterations"], field + ".max_iterations", "must be at least 1");
      }
    }
    if (s["armijo_slope"]) {
      spec.config.armijo_slope = r.number(s["armijo_slope"], field + ".armijo_slope");
      if (!(spec.config.armijo_slope > 0.0 && spec.config.armijo_slope < 0.5)) {
        r.fail(s["armijo_slope"], field + ".armijo_slope", "must lie in (0, 0.5)");
      }
    }
    if (s["backtrack_shrink"]) {
      spec.config.backtrack_shrink = r.number(s["backtrack_shrink"], field + ".backtrack_shrink");
      if (!(spec.config.backtrack_shrink > 0.0 && spec.config.backtrack_shrink < 1.0)) {
        r.fail(s["backtrack_shrink"], field + ".backtrack_shrink", "must lie in (0, 1)");
      }
    }
    if (s["cost"]) {
      if (*method != Method::LP) r.fail(s["cost"], field + ".cost", "only valid for lp");
      spec.lp_cost = r.vector(s["cost"], field + ".cost");
      if (spec.lp_cost->size() != robot.cable_count()) {
        r.fail(s["cost"], field + ".cost",
               "expected " + std::to_string(robot.cable_count()) + " values");
      }
    }
    if (*method == Method::LP && robot.redundancy() > 3) {
      r.fail(name, field + ".name", "lp supports a degree of redundancy of at most 3");
    }
    out.push_back(std::move(spec));
  }
  return out;
}

ScenarioConfig parse_document(const YAML::Node& root, const Reader& r,
                              const std::string& source) {
  r.check_keys(root, "", {"robot", "bounds", "task", "solvers", "sampling", "output"});
  RobotGeometry robot = read_robot(r, r.require(root, "robot", ""));
  TensionBounds bounds = read_bounds(r, r.require(root, "bounds", ""), robot.cable_count());
  PickPlaceTask task = read_task(r, r.require(root, "task", ""), robot);
  std::vector<SolverSpec> solvers = read_solvers(r, r.require(root, "solvers", ""), robot);

  double dt = 0.001;
  if (root["sampling"]) {
    r.check_keys(root["sampling"], "sampling", {"dt"});
    if (root["sampling"]["dt"]) {
      dt = r.number(root["sampling"]["dt"], "sampling.dt");
      if (!(dt > 0.0)) r.fail(root["sampling"]["dt"], "sampling.dt", "must be positive");
    }
  }
  std::filesystem::path output_dir = "out";
  if (root["output"]) {
    r.check_keys(root["output"], "output", {"dir"});
    if (root["output"]["dir"]) output_dir = r.text(root["output"]["dir"], "output.dir");
  }
  return ScenarioConfig{std::move(robot), std::move(bounds), std::move(task), std::move(solvers),
                        dt, std::move(output_dir), source};
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& source) {
  const Reader reader(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.mark.line + 1, e.mark.column + 1, "", e.msg);
  }
  if (!root.IsMap()) throw ConfigError(source, 0, 0, "", "config must be a mapping");
  return parse_document(root, reader, source);
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, 0, "", "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

}  // namespace cdpr
