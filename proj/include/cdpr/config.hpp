#pragma once

// Scenario files: robot, bounds, pick-and-place task, solver list, sampling
// and output. The grammar is documented in docs/config.md.

#include "cdpr/errors.hpp"
#include "cdpr/model.hpp"
#include "cdpr/solvers.hpp"
#include "cdpr/trajectory.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cdpr {

/// Parse or schema error anchored at a position of the config file.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, int line, int column, const std::string& field,
              const std::string& message);

  int line() const { return line_; }      // 1-based, 0 when unknown
  int column() const { return column_; }  // 1-based, 0 when unknown
  const std::string& field() const { return field_; }

 private:
  int line_;
  int column_;
  std::string field_;
};

struct SolverSpec {
  Method method = Method::ACS;
  SolverConfig config;
  std::optional<Eigen::VectorXd> lp_cost;
};

struct ScenarioConfig {
  RobotGeometry robot;
  TensionBounds bounds;
  PickPlaceTask task;
  std::vector<SolverSpec> solvers;
  double dt = 0.001;
  std::filesystem::path output_dir;  // as written; relative paths follow the working directory
  std::filesystem::path source;
};

ScenarioConfig load_config(const std::filesystem::path& path);
/// Same as load_config, for in-memory text; `source` names it in errors.
ScenarioConfig parse_config(const std::string& text, const std::string& source = "<config>");

}  // namespace cdpr
