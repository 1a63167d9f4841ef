#pragma once

// Tension distribution algorithms.
//
//   ACS  weighted analytic center, the barrier weights set by a preload
//        parameter; AC is the unweighted special case (eta = 0.5).
//   APC  least distance to the preload target eta·ub + (1 − eta)·lb inside
//        the closed box; QP is the eta = 0.5 special case.
//   LP   linear cost minimized over the vertices of the feasible set.

#include "cdpr/model.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string_view>

namespace cdpr {

/// Preload parameter, strictly inside (0, 1).
class PreloadParam {
 public:
  explicit PreloadParam(double eta);
  double value() const { return eta_; }

 private:
  double eta_;
};

/// alpha = 1/eta − 1, the upper/lower barrier weight ratio that moves the
/// analytic center onto the preload target of the box.
double eta_to_alpha(PreloadParam eta);

/// Barrier coefficients for the lower and upper logarithms.
struct BarrierWeights {
  double lower = 1.0;
  double upper = 1.0;

  double ratio() const { return upper / lower; }
  /// c_lb = 1, c_ub = alpha(eta).
  static BarrierWeights from_preload(PreloadParam eta);
};

/// Iteration controls shared by the solvers.
///
/// A warm start is projected onto the equilibrium set and used only if the
/// projection is strictly interior (barrier) or inside the closed box
/// (active set). Otherwise the solver cold-starts from the max-min-slack
/// point of the feasible set.
struct SolverConfig {
  double tolerance = 1e-10;  // on half the squared Newton decrement
  int max_iterations = 100;
  double armijo_slope = 0.25;
  double backtrack_shrink = 0.5;
  std::optional<Eigen::VectorXd> warm_start;
};

enum class SolverStatus { Converged, Infeasible, MaxIter, Singular };

std::string_view to_string(SolverStatus status);

struct SolverResult {
  Eigen::VectorXd tension;
  SolverStatus status = SolverStatus::Infeasible;
  double objective = 0.0;
  int iterations = 0;
  double wall_time_us = 0.0;

  bool converged() const { return status == SolverStatus::Converged; }
};

/// Barrier objective −Σ [c_lb·log(tau − lb) + c_ub·log(ub − tau)];
/// +inf outside the open box.
double barrier_objective(const Eigen::VectorXd& tension, const TensionBounds& bounds,
                         BarrierWeights weights);

/// Weighted analytic center, by damped Newton in null-space coordinates.
SolverResult solve_barrier(const EquilibriumProblem& problem, BarrierWeights weights,
                           const SolverConfig& cfg = {});
SolverResult solve_acs(const EquilibriumProblem& problem, PreloadParam eta,
                       const SolverConfig& cfg = {});
SolverResult solve_ac(const EquilibriumProblem& problem, const SolverConfig& cfg = {});

/// Target of the preload least-distance problem.
Eigen::VectorXd preload_target(const TensionBounds& bounds, PreloadParam eta);

SolverResult solve_apc(const EquilibriumProblem& problem, PreloadParam eta,
                       const SolverConfig& cfg = {});
SolverResult solve_qp(const EquilibriumProblem& problem, const SolverConfig& cfg = {});

/// argmin cost·tau over enumerate_vertices(problem), ties broken by the
/// lexicographically smallest tension. Throws UnsupportedError past the
/// vertex oracle's redundancy limit.
SolverResult solve_lp(const EquilibriumProblem& problem, const Eigen::VectorXd& cost,
                      const SolverConfig& cfg = {});

enum class Method { ACS, AC, APC, QP, LP };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);
/// Whether the method reads the preload parameter.
bool uses_preload(Method method);

/// Dispatch by method. `eta` is ignored by AC/QP/LP, `lp_cost` defaults to
/// all ones.
SolverResult solve(Method method, const EquilibriumProblem& problem, PreloadParam eta,
                   const SolverConfig& cfg = {},
                   const std::optional<Eigen::VectorXd>& lp_cost = std::nullopt);

}  // namespace cdpr
