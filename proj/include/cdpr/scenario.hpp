#pragma once

// Scenario execution and the files it produces: one CSV per solver, a JSON
// summary, and level-curve grids for the two-cable comparison problems.

#include "cdpr/config.hpp"
#include "cdpr/metrics.hpp"
#include "cdpr/sweep.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cdpr {

struct RunOptions {
  std::optional<double> dt;       // overrides the config's sampling step
  std::optional<Method> only;     // run this solver instead of the configured list
  std::optional<double> eta;      // constant preload instead of the task schedule
  bool warm_start = true;
};

struct SolverRun {
  SolverSpec spec;
  SweepResult result;
};

struct ScenarioRun {
  SampledTrajectory trajectory;
  double dt = 0.0;
  double duration = 0.0;
  bool warm_start = true;
  bool constant_eta = false;
  std::vector<SolverRun> runs;
};

ScenarioRun run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Columns t, tau_1..tau_m, eta_c, sum_tau, solve_time_us, status, then
/// ka_trace, ka_min_eig when `geom` is given. An incomplete run ends with a
/// "# partial: ..." line.
void write_run_csv(std::ostream& out, const SolverRun& run, const SampledTrajectory& traj,
                   const RobotGeometry* geom = nullptr);

/// Per-solver metrics of a scenario run as a JSON document.
std::string summary_json(const ScenarioConfig& config, const ScenarioRun& run);

/// CSV file name for a solver's run.
std::string run_csv_name(const SolverRun& run);

/// The two-cable comparison problems "a", "b" and "c":
/// w1·tau_1 + w2·tau_2 + we = 0 with a common box.
struct LevelsProblem {
  std::string id;
  double w1 = 0.0;
  double w2 = 0.0;
  double we = 0.0;
  double lower = 10.0;
  double upper = 100.0;

  EquilibriumProblem problem() const;
};

/// Throws InvalidArgumentError on an unknown id.
LevelsProblem levels_problem(std::string_view id, double lower = 10.0, double upper = 100.0);

/// Objective of `method` at an arbitrary point of the box (not only on the
/// constraint line). Barrier objectives are +inf on the boundary.
double levels_objective(Method method, const Eigen::VectorXd& tension, const TensionBounds& bounds,
                        PreloadParam eta, const Eigen::VectorXd& lp_cost);

/// Grid of cell-centre objective values rescaled to [0, 1], preceded by
/// "#" lines with the constraint line and every solver's optimum.
void write_levels_csv(std::ostream& out, const LevelsProblem& test, Method method,
                      PreloadParam eta, int grid, const Eigen::VectorXd& lp_cost);

}  // namespace cdpr
