#pragma once

// Post-processing of a tension sweep along a trajectory.

#include "cdpr/solvers.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace cdpr {

struct RunSample {
  double time = 0.0;
  Eigen::VectorXd tension;
  double eta = 0.5;
  SolverStatus status = SolverStatus::Converged;
  double wall_time_us = 0.0;
  int iterations = 0;
};

struct RunRecord {
  std::string solver;
  std::string robot;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<RunSample> samples;

  /// Non-empty, and every sample converged.
  bool valid() const;
};

inline constexpr double kDefaultLimitBand = 1e-3;

/// ∫ Σ tau_i dt over the record, trapezoidal rule (N·s).
double stiffness_index(const RunRecord& record);

struct LimitHits {
  int count = 0;            // contiguous runs of samples near a bound
  double dwell_time = 0.0;  // s, summed over runs (last − first sample time)
  double min_slack = 0.0;   // N, over all samples and cables
};

/// A sample is "at a limit" when some tension lies within
/// tol_fraction·(ub − lb) of either bound.
LimitHits limit_hits(const RunRecord& record, double tol_fraction = kDefaultLimitBand);

struct Smoothness {
  double max_step = 0.0;         // max_k ‖tau_{k+1} − tau_k‖∞, N
  double total_variation = 0.0;  // Σ_k Σ_i |Δtau_i|, N
};

Smoothness smoothness(const RunRecord& record);

struct TimingStats {
  double mean = 0.0;
  double p95 = 0.0;  // nearest rank
  double max = 0.0;
};

TimingStats timing_stats(const RunRecord& record);

}  // namespace cdpr
