#include "cdpr/sweep.hpp"

#include "cdpr/errors.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace cdpr {

namespace {

RunSample solve_sample(const RobotGeometry& geom, const TensionBounds& bounds,
                       const TrajectorySample& s, const SweepOptions& options,
                       const SolverConfig& cfg) {
  const Pose pose = sample_pose(s);
  RunSample out;
  out.time = s.time;
  out.eta = s.eta;
  try {
    const EquilibriumProblem problem =
        make_problem(geom, pose, bounds, s.state.acceleration);
    const SolverResult res =
        solve(options.method, problem, PreloadParam(s.eta), cfg, options.lp_cost);
    out.tension = res.tension;
    out.status = res.status;
    out.wall_time_us = res.wall_time_us;
    out.iterations = res.iterations;
  } catch (const GeometryError&) {
    out.tension = Eigen::VectorXd::Zero(geom.cable_count());
    out.status = SolverStatus::Singular;
  }
  return out;
}

}  // namespace

Pose sample_pose(const TrajectorySample& s) { return Pose::at(s.state.position); }

SweepResult run_sweep(const RobotGeometry& geom, const TensionBounds& bounds,
                      const SampledTrajectory& traj, const SweepOptions& options) {
  SweepResult result;
  result.record.solver = std::string(to_string(options.method));
  result.record.robot = std::string(to_string(geom.robot_class()));
  result.record.lower = bounds.lower();
  result.record.upper = bounds.upper();
  const auto& samples = traj.samples;
  auto& out = result.record.samples;

  if (options.warm_start) {
    SolverConfig cfg = options.solver;
    cfg.warm_start.reset();
    out.reserve(samples.size());
    for (const auto& s : samples) {
      out.push_back(solve_sample(geom, bounds, s, options, cfg));
      if (out.back().status != SolverStatus::Converged) {
        result.failure = out.back().status;
        return result;
      }
      cfg.warm_start = out.back().tension;
    }
    result.complete = true;
    return result;
  }

  SolverConfig cfg = options.solver;
  cfg.warm_start.reset();
  std::vector<RunSample> solved(samples.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(options.threads ? options.threads : hw,
                                                  std::max<std::size_t>(samples.size(), 1)));
  auto work = [&](unsigned w) {
    for (std::size_t k = w; k < samples.size(); k += workers) {
      solved[k] = solve_sample(geom, bounds, samples[k], options, cfg);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  for (auto& s : solved) {
    const bool ok = s.status == SolverStatus::Converged;
    out.push_back(std::move(s));
    if (!ok) {
      result.failure = out.back().status;
      return result;
    }
  }
  result.complete = true;
  return result;
}

}  // namespace cdpr
