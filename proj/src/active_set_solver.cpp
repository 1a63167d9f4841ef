#include "cdpr/errors.hpp"
#include "cdpr/feasibility.hpp"
#include "cdpr/solvers.hpp"
#include "solver_common.hpp"
#include "stopwatch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace cdpr {

namespace {

// Closed-box membership allowance, as a fraction of the bound width.
constexpr double kClosedSlack = 1e-12;

// Bound constraints in null-space coordinates, a_j·lambda <= b_j. Constraint
// 2i is the lower bound of cable i, 2i + 1 its upper bound.
struct BoxConstraints {
  const NullSpaceParam& param;
  const TensionBounds& bounds;

  int count() const { return 2 * static_cast<int>(param.particular.size()); }
  static int cable(int j) { return j / 2; }
  static bool is_upper(int j) { return j % 2 == 1; }

  Eigen::RowVectorXd normal(int j) const {
    const Eigen::RowVectorXd row = param.basis.row(cable(j));
    return is_upper(j) ? row : Eigen::RowVectorXd(-row);
  }
  double rhs(int j) const {
    const int i = cable(j);
    return is_upper(j) ? bounds.upper()[i] - param.particular[i]
                       : param.particular[i] - bounds.lower()[i];
  }
};

}  // namespace

Eigen::VectorXd preload_target(const TensionBounds& bounds, PreloadParam eta) {
  return eta.value() * bounds.upper() + (1.0 - eta.value()) * bounds.lower();
}

// Primal active-set method for min ½‖lambda − lambda_target‖² over the box
// constraints. N has orthonormal columns and tau_p ⊥ null(W), so this is the
// Euclidean distance to the target restricted to the equilibrium set.
SolverResult solve_apc(const EquilibriumProblem& problem, PreloadParam eta,
                       const SolverConfig& cfg) {
  detail::check_config(cfg);
  const detail::Stopwatch clock;
  const auto& bounds = problem.bounds;
  const Eigen::VectorXd target = preload_target(bounds, eta);
  SolverResult res;
  auto finish = [&](SolverStatus status) {
    res.status = status;
    res.objective = (res.tension - target).norm();
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
  const int r = param.redundancy();

  // Target already in equilibrium up to rounding: it is the answer.
  const double round_off = 64.0 * std::numeric_limits<double>::epsilon() *
                           (problem.wrench_matrix.norm() * target.norm() +
                            problem.external_wrench.norm());
  if (problem.residual(target).norm() <= round_off) {
    res.tension = target;
    return finish(SolverStatus::Converged);
  }

  Eigen::VectorXd coords;
  if (cfg.warm_start && cfg.warm_start->size() == problem.cable_count()) {
    coords = param.coordinates(*cfg.warm_start);
    if (normalized_slack(param.tension(coords), bounds) < 0.0) coords.resize(0);
  }
  if (coords.size() == 0) {
    const MaxMinSlack start = max_min_slack(problem, param);
    if (start.slack < -kClosedSlack) {
      res.tension = start.tension;
      return finish(SolverStatus::Infeasible);
    }
    coords = param.coordinates(start.tension);
  }

  const BoxConstraints box{param, bounds};
  const Eigen::VectorXd goal = param.coordinates(target);
  std::vector<int> working;
  double objective = 0.5 * (coords - goal).squaredNorm();
  bool optimal = r == 0;

  for (int iter = 0; iter < cfg.max_iterations && !optimal; ++iter) {
    res.iterations = iter + 1;
    const Eigen::VectorXd g = goal - coords;
    const double scale = 1.0 + coords.norm() + goal.norm();
    const int k = static_cast<int>(working.size());

    Eigen::VectorXd p = g;
    Eigen::VectorXd mu;
    if (k > 0) {
      Eigen::MatrixXd active(k, r);
      for (int a = 0; a < k; ++a) active.row(a) = box.normal(working[a]);
      mu = (active * active.transpose()).ldlt().solve(active * g);
      p = g - active.transpose() * mu;
    }

    if (p.norm() <= 1e-12 * scale) {
      // Stationary on the working set: drop the most negative multiplier.
      int drop = -1;
      for (int a = 0; a < k; ++a) {
        if (mu[a] < -1e-12 * scale && (drop < 0 || mu[a] < mu[drop])) drop = a;
      }
      if (drop < 0) {
        optimal = true;
        break;
      }
      working.erase(working.begin() + drop);
      continue;
    }

    double step = 1.0;
    int blocking = -1;
    for (int j = 0; j < box.count(); ++j) {
      if (std::find(working.begin(), working.end(), j) != working.end()) continue;
      const Eigen::RowVectorXd a = box.normal(j);
      const double ap = a.dot(p);
      if (ap <= 1e-14 * p.norm()) continue;
      const double ratio = (box.rhs(j) - a.dot(coords)) / ap;
      if (ratio < step) {
        step = ratio;
        blocking = j;
      }
    }
    coords += std::max(step, 0.0) * p;

    const double next = 0.5 * (coords - goal).squaredNorm();
    if (next > objective + 1e-12 * (1.0 + objective)) break;  // cycling
    objective = next;
    if (blocking >= 0) working.push_back(blocking);
  }

  res.tension = param.tension(coords).cwiseMax(bounds.lower()).cwiseMin(bounds.upper());
  for (int j : working) {
    const int i = BoxConstraints::cable(j);
    res.tension[i] = BoxConstraints::is_upper(j) ? bounds.upper()[i] : bounds.lower()[i];
  }
  return finish(optimal ? SolverStatus::Converged : SolverStatus::MaxIter);
}

SolverResult solve_qp(const EquilibriumProblem& problem, const SolverConfig& cfg) {
  return solve_apc(problem, PreloadParam(0.5), cfg);
}

}  // namespace cdpr
