#pragma once

#include "cdpr/model.hpp"
#include "cdpr/solvers.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>

namespace cdpr {

/// K_a = Σ (tau_i / l_i)(I − u_i u_iᵀ), translational block only.
Eigen::MatrixXd active_stiffness(std::span<const CableState> cables,
                                 const Eigen::VectorXd& tension);

/// Any tension distribution rule; it is called from several poses and must be
/// reentrant.
using TensionSolver = std::function<SolverResult(const EquilibriumProblem&)>;

inline constexpr double kDefaultStiffnessStep = 1e-5;

/// Translational stiffness −∂(W(q)·tau(q))/∂q by central differences, with
/// tau re-solved at every probe pose under the static external wrench.
///
/// The sign makes the result the restoring stiffness, so that with tensions
/// frozen it reduces to active_stiffness(). Throws Error if the solver fails
/// at a probe pose.
Eigen::MatrixXd total_stiffness_numeric(const RobotGeometry& geom, const Pose& pose,
                                        const TensionBounds& bounds,
                                        const TensionSolver& solver,
                                        double step = kDefaultStiffnessStep);

struct StiffnessReport {
  Eigen::MatrixXd active;   // N/m
  Eigen::MatrixXd total;    // N/m, numeric
  Eigen::MatrixXd passive;  // total − active
  double active_trace = 0.0;
  double active_min_eigenvalue = 0.0;
};

StiffnessReport stiffness_report(const RobotGeometry& geom, const Pose& pose,
                                 const TensionBounds& bounds, const TensionSolver& solver,
                                 double step = kDefaultStiffnessStep);

/// Trace and smallest eigenvalue of a symmetric matrix.
std::pair<double, double> stiffness_summary(const Eigen::MatrixXd& k);

}  // namespace cdpr
