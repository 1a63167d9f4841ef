#include "cdpr/errors.hpp"
#include "cdpr/feasibility.hpp"
#include "cdpr/solvers.hpp"
#include "solver_common.hpp"
#include "stopwatch.hpp"

#include <cmath>
#include <limits>

namespace cdpr {

namespace {

constexpr double kFractionToBoundary = 0.99;
constexpr double kMinStep = 1e-14;

// Largest s with lb < tau + s·dtau < ub.
double step_to_boundary(const Eigen::VectorXd& tau, const Eigen::VectorXd& dtau,
                        const TensionBounds& bounds) {
  double s = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < tau.size(); ++i) {
    if (dtau[i] < 0.0) {
      s = std::min(s, (tau[i] - bounds.lower()[i]) / -dtau[i]);
    } else if (dtau[i] > 0.0) {
      s = std::min(s, (bounds.upper()[i] - tau[i]) / dtau[i]);
    }
  }
  return s;
}

}  // namespace

double barrier_objective(const Eigen::VectorXd& tension, const TensionBounds& bounds,
                         BarrierWeights weights) {
  const Eigen::ArrayXd lo = (tension - bounds.lower()).array();
  const Eigen::ArrayXd hi = (bounds.upper() - tension).array();
  if ((lo <= 0.0).any() || (hi <= 0.0).any()) {
    return std::numeric_limits<double>::infinity();
  }
  return -(weights.lower * lo.log().sum() + weights.upper * hi.log().sum());
}

SolverResult solve_barrier(const EquilibriumProblem& problem, BarrierWeights weights,
                           const SolverConfig& cfg) {
  detail::check_config(cfg);
  if (!(weights.lower > 0.0) || !(weights.upper > 0.0)) {
    throw InvalidArgumentError("barrier weights must be positive");
  }
  const detail::Stopwatch clock;
  const auto& bounds = problem.bounds;
  SolverResult res;
  auto finish = [&](SolverStatus status) {
    res.status = status;
    res.objective = barrier_objective(res.tension, bounds, weights);
    res.wall_time_us = clock.elapsed_us();
    return res;
  };

  NullSpaceParam param;
  try {
    param = null_space_param(problem);
  } catch (const SingularConfigurationError&) {
    res.tension = Eigen::VectorXd::Constant(problem.cable_count(),
                                            std::numeric_limits<double>::quiet_NaN());
    return finish(SolverStatus::Singular);
  }

  Eigen::VectorXd coords;
  if (cfg.warm_start && cfg.warm_start->size() == problem.cable_count()) {
    coords = param.coordinates(*cfg.warm_start);
    if (!(normalized_slack(param.tension(coords), bounds) > kInteriorSlack)) coords.resize(0);
  }
  if (coords.size() == 0 && param.redundancy() > 0) {
    const MaxMinSlack start = max_min_slack(problem, param);
    if (!(start.slack > kInteriorSlack)) {
      res.tension = start.tension;
      return finish(SolverStatus::Infeasible);
    }
    coords = param.coordinates(start.tension);
  }

  res.tension = param.tension(coords);
  if (param.redundancy() == 0) {
    return finish(normalized_slack(res.tension, bounds) > kInteriorSlack
                      ? SolverStatus::Converged
                      : SolverStatus::Infeasible);
  }

  const Eigen::MatrixXd& basis = param.basis;
  double f = barrier_objective(res.tension, bounds, weights);
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const Eigen::ArrayXd lo = (res.tension - bounds.lower()).array();
    const Eigen::ArrayXd hi = (bounds.upper() - res.tension).array();
    const Eigen::VectorXd grad = (-weights.lower / lo + weights.upper / hi).matrix();
    const Eigen::VectorXd curv =
        (weights.lower / lo.square() + weights.upper / hi.square()).matrix();

    const Eigen::VectorXd reduced_grad = basis.transpose() * grad;
    const Eigen::MatrixXd reduced_hess = basis.transpose() * curv.asDiagonal() * basis;
    const Eigen::LLT<Eigen::MatrixXd> llt(reduced_hess);
    if (llt.info() != Eigen::Success) return finish(SolverStatus::Singular);

    const Eigen::VectorXd step = -llt.solve(reduced_grad);
    const double decrement2 = -reduced_grad.dot(step);
    const Eigen::VectorXd dtau = basis * step;
    double s = std::min(1.0, kFractionToBoundary * step_to_boundary(res.tension, dtau, bounds));

    const bool done = 0.5 * decrement2 <= cfg.tolerance;
    if (!done) {
      // Armijo backtracking; the fraction-to-boundary cap keeps every trial
      // strictly inside the box.
      double trial = barrier_objective(res.tension + s * dtau, bounds, weights);
      while (trial > f - cfg.armijo_slope * s * decrement2) {
        s *= cfg.backtrack_shrink;
        if (s < kMinStep) return finish(SolverStatus::Singular);
        trial = barrier_objective(res.tension + s * dtau, bounds, weights);
      }
      f = trial;
    }

    coords += s * step;
    res.tension = param.tension(coords);
    res.iterations = iter + 1;
    if (done) return finish(SolverStatus::Converged);
  }
  return finish(SolverStatus::MaxIter);
}

}  // namespace cdpr
