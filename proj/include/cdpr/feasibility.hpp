#pragma once

// The equilibrium set, the tension box and their intersection (the feasible
// set), seen through the null-space parametrization tau = tau_p + N·lambda.

#include "cdpr/model.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace cdpr {

inline constexpr double kFeasibilityTolerance = 1e-8;
/// Minimum normalized slack for a point to count as strictly interior.
inline constexpr double kInteriorSlack = 1e-9;
/// enumerate_vertices only handles redundancy up to this value.
inline constexpr int kMaxVertexOracleRedundancy = 3;

struct NullSpaceParam {
  Eigen::VectorXd particular;  // minimum-norm solution of W·tau = −w_e
  Eigen::MatrixXd basis;       // m×r, orthonormal columns spanning null(W)

  int redundancy() const { return static_cast<int>(basis.cols()); }
  Eigen::VectorXd tension(const Eigen::VectorXd& coords) const {
    return particular + basis * coords;
  }
  /// Coordinates of the orthogonal projection of `tension` onto the
  /// equilibrium set.
  Eigen::VectorXd coordinates(const Eigen::VectorXd& tension) const {
    return basis.transpose() * (tension - particular);
  }
};

/// Throws SingularConfigurationError when W is rank deficient.
NullSpaceParam null_space_param(const EquilibriumProblem& problem);

bool is_feasible(const Eigen::VectorXd& tension, const EquilibriumProblem& problem,
                 double tol = kFeasibilityTolerance);

/// Smallest of (tau − lb)/(ub − lb) and (ub − tau)/(ub − lb) over all cables.
double normalized_slack(const Eigen::VectorXd& tension, const TensionBounds& bounds);

struct MaxMinSlack {
  Eigen::VectorXd tension;
  double slack = 0.0;  // normalized; negative when the feasible set is empty
};

/// Point of the equilibrium set maximizing the smallest normalized bound
/// slack, found with a small dense simplex.
MaxMinSlack max_min_slack(const EquilibriumProblem& problem, const NullSpaceParam& param);

/// Strictly interior feasible tension.
///
/// The returned point maximizes the smallest normalized slack and keeps at
/// least `margin·(ub − lb)` from every bound. Returns nullopt when no point
/// of the equilibrium set achieves that margin, or when the feasible set has
/// no interior at all.
std::optional<Eigen::VectorXd> interior_point(const EquilibriumProblem& problem,
                                              double margin = 0.0);

/// All vertices of the feasible set, sorted lexicographically. Redundancy
/// above kMaxVertexOracleRedundancy throws UnsupportedError.
std::vector<Eigen::VectorXd> enumerate_vertices(const EquilibriumProblem& problem);

}  // namespace cdpr
