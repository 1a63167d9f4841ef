#include "cdpr/cli.hpp"

#include "cdpr/config.hpp"
#include "cdpr/errors.hpp"
#include "cdpr/feasibility.hpp"
#include "cdpr/scenario.hpp"
#include "cdpr/stiffness.hpp"
#include "format.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>

namespace cdpr::cli {

namespace {

int exit_code(SolverStatus status) {
  switch (status) {
    case SolverStatus::Converged:
      return kSuccess;
    case SolverStatus::Infeasible:
      return kInfeasible;
    default:
      return kSolverFailure;
  }
}

Method method_or_throw(const std::string& name) {
  const auto m = parse_method(name);
  if (!m) throw InvalidArgumentError("unknown solver '" + name + "' (expected acs, ac, apc, qp or lp)");
  return *m;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + path.string());
  return f;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const ScenarioConfig cfg = load_config(path);
  out << path << ": ok (" << to_string(cfg.robot.robot_class()) << ", "
      << cfg.robot.cable_count() << " cables, " << cfg.solvers.size() << " solver"
      << (cfg.solvers.size() == 1 ? "" : "s") << ")\n";
  return kSuccess;
}

struct SolveArgs {
  std::string config;
  std::string solver = "acs";
  double eta = 0.5;
  std::vector<double> pose;
  bool stiffness = false;
};

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  using nlohmann::json;
  const ScenarioConfig cfg = load_config(args.config);
  const Method method = method_or_throw(args.solver);
  const PreloadParam eta(args.eta);

  Eigen::VectorXd position = cfg.task.a;
  if (!args.pose.empty()) {
    if (static_cast<int>(args.pose.size()) != cfg.robot.translational_dim()) {
      throw InvalidArgumentError("--pose needs " + std::to_string(cfg.robot.translational_dim()) +
                                 " comma-separated coordinates");
    }
    position = Eigen::Map<const Eigen::VectorXd>(args.pose.data(),
                                                 static_cast<Eigen::Index>(args.pose.size()));
  }
  const Pose pose = Pose::at(position);

  SolverConfig scfg;
  std::optional<Eigen::VectorXd> cost;
  for (const auto& s : cfg.solvers) {
    if (s.method == method) {
      scfg = s.config;
      cost = s.lp_cost;
    }
  }

  json doc;
  doc["solver"] = std::string(to_string(method));
  doc["eta"] = eta.value();
  doc["pose"] = std::vector<double>(position.data(), position.data() + position.size());

  SolverResult result;
  std::optional<EquilibriumProblem> problem;
  try {
    problem.emplace(make_problem(cfg.robot, pose, cfg.bounds));
    result = solve(method, *problem, eta, scfg, cost);
  } catch (const GeometryError& e) {
    result.status = SolverStatus::Singular;
    doc["error"] = e.what();
  }
  doc["status"] = std::string(to_string(result.status));
  doc["iterations"] = result.iterations;
  doc["wall_time_us"] = result.wall_time_us;
  if (result.converged()) {
    doc["tension"] =
        std::vector<double>(result.tension.data(), result.tension.data() + result.tension.size());
    doc["objective"] = result.objective;
    doc["residual"] = problem->residual(result.tension).norm();
    doc["min_normalized_slack"] = normalized_slack(result.tension, cfg.bounds);
    if (args.stiffness) {
      const auto cables = cable_geometry(cfg.robot, pose);
      const Eigen::MatrixXd ka = active_stiffness(cables, result.tension);
      const auto [trace, min_eig] = stiffness_summary(ka);
      json rows = json::array();
      for (Eigen::Index i = 0; i < ka.rows(); ++i) {
        rows.push_back(std::vector<double>(ka.cols()));
        for (Eigen::Index j = 0; j < ka.cols(); ++j) rows.back()[j] = ka(i, j);
      }
      doc["active_stiffness"] = {{"matrix", rows}, {"trace", trace}, {"min_eigenvalue", min_eig}};
    }
  }
  out << doc.dump(2) << '\n';
  return exit_code(result.status);
}

struct RunArgs {
  std::string config;
  std::string solver;
  std::optional<double> eta;
  std::optional<double> dt;
  std::string out_dir;
  bool no_warm_start = false;
  bool stiffness = false;
};

int cmd_run(const RunArgs& args, std::ostream& out) {
  const ScenarioConfig cfg = load_config(args.config);
  RunOptions options;
  options.dt = args.dt;
  options.eta = args.eta;
  options.warm_start = !args.no_warm_start;
  if (!args.solver.empty()) options.only = method_or_throw(args.solver);
  if (options.only == Method::LP && cfg.robot.redundancy() > kMaxVertexOracleRedundancy) {
    throw InvalidArgumentError("lp supports a degree of redundancy of at most " +
                               std::to_string(kMaxVertexOracleRedundancy));
  }

  const std::filesystem::path dir = args.out_dir.empty() ? cfg.output_dir : std::filesystem::path(args.out_dir);
  std::filesystem::create_directories(dir);

  const ScenarioRun run = run_scenario(cfg, options);
  int code = kSuccess;
  for (const auto& r : run.runs) {
    auto f = open_output(dir / run_csv_name(r));
    write_run_csv(f, r, run.trajectory, args.stiffness ? &cfg.robot : nullptr);
    const auto& rec = r.result.record;
    out << rec.solver << ": " << rec.samples.size() << "/" << run.trajectory.samples.size()
        << " samples";
    if (r.result.complete) {
      out << ", I_k " << detail::fmt(stiffness_index(rec)) << " N*s";
    } else {
      const SolverStatus failure = r.result.failure.value_or(SolverStatus::Infeasible);
      out << ", stopped: " << to_string(failure);
      code = std::max(code, exit_code(failure));
    }
    out << '\n';
  }
  auto f = open_output(dir / "summary.json");
  f << summary_json(cfg, run);
  out << "wrote " << (dir / "summary.json").string() << '\n';
  return code;
}

struct LevelsArgs {
  std::string test;
  std::string solver = "ac";
  double eta = 0.5;
  int grid = 101;
  std::string out_dir;
};

int cmd_levels(const LevelsArgs& args, std::ostream& out) {
  const LevelsProblem test = levels_problem(args.test);
  const Method method = method_or_throw(args.solver);
  const PreloadParam eta(args.eta);
  const Eigen::VectorXd cost = Eigen::VectorXd::Ones(2);
  if (args.out_dir.empty()) {
    write_levels_csv(out, test, method, eta, args.grid, cost);
    return kSuccess;
  }
  std::filesystem::create_directories(args.out_dir);
  const auto path = std::filesystem::path(args.out_dir) /
                    ("levels_" + test.id + "_" + std::string(to_string(method)) + ".csv");
  auto f = open_output(path);
  write_levels_csv(f, test, method, eta, args.grid, cost);
  out << "wrote " << path.string() << '\n';
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tension distribution for cable-driven parallel robots", "cdpr-tension"};
  app.require_subcommand(1);

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "Check a scenario config file");
  validate->add_option("--config,config", validate_config, "Scenario file")->required();

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one pose under the static wrench");
  solve_cmd->add_option("--config", solve_args.config, "Scenario file")->required();
  solve_cmd->add_option("--solver", solve_args.solver, "acs, ac, apc, qp or lp")
      ->capture_default_str();
  solve_cmd->add_option("--eta", solve_args.eta, "Preload parameter in (0, 1)")
      ->capture_default_str();
  solve_cmd->add_option("--pose", solve_args.pose, "Position x,y[,z]; defaults to waypoint A")
      ->delimiter(',');
  solve_cmd->add_flag("--stiffness", solve_args.stiffness, "Report the active stiffness");

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Sweep the pick-and-place task for each solver");
  run_cmd->add_option("--config", run_args.config, "Scenario file")->required();
  run_cmd->add_option("--solver", run_args.solver, "Run only this solver");
  run_cmd->add_option("--eta", run_args.eta, "Constant preload instead of the schedule");
  run_cmd->add_option("--dt", run_args.dt, "Sampling step in seconds");
  run_cmd->add_option("--out", run_args.out_dir, "Output directory");
  run_cmd->add_flag("--no-warm-start", run_args.no_warm_start,
                    "Independent per-sample solves, spread over threads");
  run_cmd->add_flag("--stiffness", run_args.stiffness, "Add ka_trace and ka_min_eig columns");

  LevelsArgs levels_args;
  auto* levels = app.add_subcommand("levels", "Objective grid of a two-cable comparison problem");
  levels->add_option("--test", levels_args.test, "a, b or c")->required();
  levels->add_option("--solver", levels_args.solver, "Objective to tabulate")
      ->capture_default_str();
  levels->add_option("--eta", levels_args.eta, "Preload parameter in (0, 1)")
      ->capture_default_str();
  levels->add_option("--grid", levels_args.grid, "Cells per axis")->capture_default_str();
  levels->add_option("--out", levels_args.out_dir, "Output directory (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*validate) return cmd_validate(validate_config, out);
    if (*solve_cmd) return cmd_solve(solve_args, out);
    if (*run_cmd) return cmd_run(run_args, out);
    if (*levels) return cmd_levels(levels_args, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kUsageError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"cdpr-tension"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cdpr::cli
