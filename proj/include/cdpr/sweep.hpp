#pragma once

// Runs one tension distribution method along a sampled trajectory.

#include "cdpr/metrics.hpp"
#include "cdpr/model.hpp"
#include "cdpr/solvers.hpp"
#include "cdpr/trajectory.hpp"

#include <optional>

namespace cdpr {

struct SweepOptions {
  Method method = Method::ACS;
  SolverConfig solver;                    // warm_start is managed by the sweep
  std::optional<Eigen::VectorXd> lp_cost;
  bool warm_start = true;                 // chain each solve from the previous one
  unsigned threads = 0;                   // cold sweeps only; 0 = hardware concurrency
};

struct SweepResult {
  RunRecord record;  // stops at the first failed sample, which is included
  bool complete = false;
  std::optional<SolverStatus> failure;
};

/// Pose at a sample (fixed orientation).
Pose sample_pose(const TrajectorySample& s);

/// Solves every sample in time order. Each sample uses the dynamic external
/// wrench m·(g − a). With warm start disabled the solves are independent and
/// are spread over worker threads; output order is by time regardless.
SweepResult run_sweep(const RobotGeometry& geom, const TensionBounds& bounds,
                      const SampledTrajectory& traj, const SweepOptions& options);

}  // namespace cdpr
