#include "cdpr/trajectory.hpp"

#include "cdpr/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cdpr {

std::array<double, 8> septic_coeffs() { return {0.0, 0.0, 0.0, 0.0, 35.0, -84.0, 70.0, -20.0}; }

double septic(double x, int derivative) {
  if (derivative < 0 || derivative > 3) {
    throw InvalidArgumentError("timing law derivative order must be 0..3");
  }
  static const std::array<double, 8> coeffs = septic_coeffs();
  // Horner on the differentiated coefficients.
  double value = 0.0;
  for (int k = 7; k >= derivative; --k) {
    double c = coeffs[k];
    for (int j = 0; j < derivative; ++j) c *= k - j;
    value = value * x + c;
  }
  return value;
}

MotionState eval_segment(const SepticSegment& seg, double t) {
  const Eigen::VectorXd delta = seg.end - seg.start;
  const Eigen::Index d = seg.start.size();
  if (!(seg.duration > 0.0) || t <= 0.0) {
    return {t <= 0.0 ? seg.start : seg.end, Eigen::VectorXd::Zero(d), Eigen::VectorXd::Zero(d)};
  }
  if (t >= seg.duration) {
    return {seg.end, Eigen::VectorXd::Zero(d), Eigen::VectorXd::Zero(d)};
  }
  const double x = t / seg.duration;
  const double inv_t = 1.0 / seg.duration;
  return {seg.start + septic(x) * delta, (septic(x, 1) * inv_t) * delta,
          (septic(x, 2) * inv_t * inv_t) * delta};
}

void PickPlaceTask::validate() const {
  const Eigen::Index dim = a.size();
  if (dim < 2 || dim > 3 || b.size() != dim || c.size() != dim || d.size() != dim) {
    throw InvalidArgumentError("waypoints must all be 2D or all be 3D");
  }
  if (!(pick > 0.0) || !(move > 0.0) || !(place > 0.0) || !(pause >= 0.0)) {
    throw InvalidArgumentError("motion durations must be positive and the pause non-negative");
  }
  for (double e : eta) {
    if (!(e > 0.0 && e < 1.0)) {
      throw InvalidArgumentError("eta breakpoints must lie in the open interval (0, 1)");
    }
  }
}

PickPlaceTrajectory::PickPlaceTrajectory(PickPlaceTask task) : task_(std::move(task)) {
  task_.validate();
  phases_ = {
      {task_.a, task_.b, task_.pick},  {task_.b, task_.b, task_.pause},
      {task_.b, task_.c, task_.move},  {task_.c, task_.c, task_.pause},
      {task_.c, task_.d, task_.place},
  };
  breakpoints_.push_back(0.0);
  for (const auto& p : phases_) breakpoints_.push_back(breakpoints_.back() + p.duration);
}

MotionState PickPlaceTrajectory::eval(double t) const {
  // Last phase whose start is <= t; zero-length pauses are skipped naturally.
  std::size_t k = 0;
  for (std::size_t i = 0; i < phases_.size(); ++i) {
    if (t >= breakpoints_[i]) k = i;
  }
  return eval_segment(phases_[k], t - breakpoints_[k]);
}

PickPlaceTrajectory build_pick_place(const PickPlaceTask& task) {
  return PickPlaceTrajectory(task);
}

double preload_schedule(double t, const PickPlaceTask& task) {
  const auto& e = task.eta;
  auto ramp = [](double from, double to, double local, double duration) {
    const double x = std::clamp(local / duration, 0.0, 1.0);
    return from + septic(x) * (to - from);
  };
  const double t1 = task.pick;
  const double t2 = t1 + task.pause;
  const double t3 = t2 + task.move;
  const double t4 = t3 + task.pause;
  if (t < t1) return ramp(e[0], e[1], t, task.pick);
  if (t < t2) return e[1];
  if (t < t3) return ramp(e[1], e[2], t - t2, task.move);
  if (t < t4) return e[2];
  return ramp(e[2], e[3], t - t4, task.place);
}

SampledTrajectory sample(const PickPlaceTrajectory& traj, double dt) {
  if (!(dt > 0.0)) throw InvalidArgumentError("sample step must be positive");
  const double tf = traj.duration();
  const auto steps = static_cast<long long>(std::floor(tf / dt + 1e-9));

  SampledTrajectory out;
  out.samples.reserve(static_cast<std::size_t>(steps) + 2);
  auto push = [&](double t) {
    out.samples.push_back({t, traj.eval(t), preload_schedule(t, traj.task())});
  };
  for (long long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    push(std::abs(t - tf) <= 1e-9 * std::max(1.0, tf) ? tf : std::min(t, tf));
  }
  if (out.samples.back().time < tf) push(tf);
  return out;
}

}  // namespace cdpr
