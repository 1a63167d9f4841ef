#include "cdpr/solvers.hpp"

#include "cdpr/errors.hpp"
#include "cdpr/feasibility.hpp"
#include "solver_common.hpp"
#include "stopwatch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cdpr {

PreloadParam::PreloadParam(double eta) : eta_(eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw InvalidArgumentError("preload parameter must lie in (0, 1), got " +
                               std::to_string(eta));
  }
}

double eta_to_alpha(PreloadParam eta) { return 1.0 / eta.value() - 1.0; }

BarrierWeights BarrierWeights::from_preload(PreloadParam eta) {
  return {1.0, eta_to_alpha(eta)};
}

std::string_view to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::Converged:
      return "converged";
    case SolverStatus::Infeasible:
      return "infeasible";
    case SolverStatus::MaxIter:
      return "max_iter";
    case SolverStatus::Singular:
      return "singular";
  }
  return "unknown";
}

SolverResult solve_acs(const EquilibriumProblem& problem, PreloadParam eta,
                       const SolverConfig& cfg) {
  return solve_barrier(problem, BarrierWeights::from_preload(eta), cfg);
}

SolverResult solve_ac(const EquilibriumProblem& problem, const SolverConfig& cfg) {
  return solve_acs(problem, PreloadParam(0.5), cfg);
}

SolverResult solve_lp(const EquilibriumProblem& problem, const Eigen::VectorXd& cost,
                      const SolverConfig& cfg) {
  detail::check_config(cfg);
  if (cost.size() != problem.cable_count()) {
    throw InvalidArgumentError("LP cost size does not match cable count");
  }
  const detail::Stopwatch clock;
  SolverResult res;
  const auto vertices = enumerate_vertices(problem);
  if (vertices.empty()) {
    res.tension = null_space_param(problem).particular;
    res.status = SolverStatus::Infeasible;
  } else {
    // Vertices arrive lexicographically sorted, so keeping the first of any
    // tie gives the lexicographic tie-break.
    std::size_t best = 0;
    double best_cost = cost.dot(vertices[0]);
    for (std::size_t k = 1; k < vertices.size(); ++k) {
      const double c = cost.dot(vertices[k]);
      if (c < best_cost - 1e-12 * std::max(1.0, std::abs(best_cost))) {
        best = k;
        best_cost = c;
      }
    }
    res.tension = vertices[best];
    res.status = SolverStatus::Converged;
    res.iterations = static_cast<int>(vertices.size());
  }
  res.objective = cost.dot(res.tension);
  res.wall_time_us = clock.elapsed_us();
  return res;
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::ACS:
      return "acs";
    case Method::AC:
      return "ac";
    case Method::APC:
      return "apc";
    case Method::QP:
      return "qp";
    case Method::LP:
      return "lp";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (auto m : {Method::ACS, Method::AC, Method::APC, Method::QP, Method::LP}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

bool uses_preload(Method method) { return method == Method::ACS || method == Method::APC; }

SolverResult solve(Method method, const EquilibriumProblem& problem, PreloadParam eta,
                   const SolverConfig& cfg, const std::optional<Eigen::VectorXd>& lp_cost) {
  switch (method) {
    case Method::ACS:
      return solve_acs(problem, eta, cfg);
    case Method::AC:
      return solve_ac(problem, cfg);
    case Method::APC:
      return solve_apc(problem, eta, cfg);
    case Method::QP:
      return solve_qp(problem, cfg);
    case Method::LP:
      return solve_lp(problem,
                      lp_cost ? *lp_cost
                              : Eigen::VectorXd::Ones(problem.cable_count()).eval(),
                      cfg);
  }
  throw InvalidArgumentError("unknown method");
}

}  // namespace cdpr
