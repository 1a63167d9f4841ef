#pragma once

// Point-to-point motion with a 7th-degree timing law (zero velocity,
// acceleration and jerk at both ends), the pick-and-place task built from
// it, and the preload-parameter schedule that rides along.

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace cdpr {

/// Coefficients of s(x) = Σ c_k x^k on [0, 1], ascending powers.
std::array<double, 8> septic_coeffs();

/// k-th derivative (0..3) of the timing law at x ∈ [0, 1].
double septic(double x, int derivative = 0);

struct SepticSegment {
  Eigen::VectorXd start;
  Eigen::VectorXd end;
  double duration = 0.0;  // s
};

struct MotionState {
  Eigen::VectorXd position;
  Eigen::VectorXd velocity;
  Eigen::VectorXd acceleration;
};

/// Straight-line motion along the segment; outside [0, T] the state is
/// clamped to the nearest endpoint at rest.
MotionState eval_segment(const SepticSegment& seg, double t);

struct PickPlaceTask {
  Eigen::VectorXd a, b, c, d;  // P_A .. P_D
  double pick = 0.0;           // A -> B
  double move = 0.0;           // B -> C
  double place = 0.0;          // C -> D
  double pause = 0.0;          // after pick and after move
  std::array<double, 4> eta = {0.25, 0.5, 0.75, 0.9};

  double total_duration() const { return pick + move + place + 2.0 * pause; }
  /// Throws InvalidArgumentError on bad durations, mismatched waypoint
  /// sizes or an eta breakpoint outside (0, 1).
  void validate() const;
};

/// The assembled pick-and-place motion: pick, pause, move, pause, place.
class PickPlaceTrajectory {
 public:
  explicit PickPlaceTrajectory(PickPlaceTask task);

  const PickPlaceTask& task() const { return task_; }
  const std::vector<SepticSegment>& phases() const { return phases_; }
  /// Start time of every phase plus the final time.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  double duration() const { return breakpoints_.back(); }
  MotionState eval(double t) const;

 private:
  PickPlaceTask task_;
  std::vector<SepticSegment> phases_;
  std::vector<double> breakpoints_;
};

PickPlaceTrajectory build_pick_place(const PickPlaceTask& task);

/// Preload parameter at time t: septic transitions eta0→eta1 during the
/// pick, eta1→eta2 during the move and eta2→eta3 during the place, holding
/// the reached value through the pauses.
double preload_schedule(double t, const PickPlaceTask& task);

struct TrajectorySample {
  double time = 0.0;
  MotionState state;
  double eta = 0.5;
};

struct SampledTrajectory {
  std::vector<TrajectorySample> samples;
};

/// Samples at t_k = k·dt including both endpoints. When dt does not divide
/// the duration, the last interval is shorter.
SampledTrajectory sample(const PickPlaceTrajectory& traj, double dt);

}  // namespace cdpr
