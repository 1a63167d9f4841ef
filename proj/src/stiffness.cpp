#include "cdpr/stiffness.hpp"

#include "cdpr/errors.hpp"

#include <string>

namespace cdpr {

Eigen::MatrixXd active_stiffness(std::span<const CableState> cables,
                                 const Eigen::VectorXd& tension) {
  if (cables.empty() || tension.size() != static_cast<Eigen::Index>(cables.size())) {
    throw InvalidArgumentError("active_stiffness needs one tension per cable");
  }
  const Eigen::Index d = cables.front().direction.size();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < cables.size(); ++i) {
    const double t = tension[static_cast<Eigen::Index>(i)];
    if (!(t > 0.0)) {
      throw InvalidArgumentError("active stiffness needs positive tensions (cable " +
                                 std::to_string(i + 1) + ")");
    }
    const Eigen::VectorXd& u = cables[i].direction;
    k.noalias() += (t / cables[i].length) *
                   (Eigen::MatrixXd::Identity(d, d) - u * u.transpose());
  }
  return k;
}

Eigen::MatrixXd total_stiffness_numeric(const RobotGeometry& geom, const Pose& pose,
                                        const TensionBounds& bounds,
                                        const TensionSolver& solver, double step) {
  if (!(step > 0.0)) throw InvalidArgumentError("finite-difference step must be positive");
  const int d = geom.translational_dim();

  auto cable_force = [&](const Pose& probe) -> Eigen::VectorXd {
    const EquilibriumProblem problem = make_problem(geom, probe, bounds);
    const SolverResult res = solver(problem);
    if (!res.converged()) {
      throw Error("tension solver failed at a stiffness probe pose (" +
                  std::string(to_string(res.status)) + ")");
    }
    return (problem.wrench_matrix * res.tension).head(d);
  };

  Eigen::MatrixXd k(d, d);
  for (int j = 0; j < d; ++j) {
    Pose plus = pose;
    Pose minus = pose;
    plus.position[j] += step;
    minus.position[j] -= step;
    k.col(j) = -(cable_force(plus) - cable_force(minus)) / (2.0 * step);
  }
  return k;
}

std::pair<double, double> stiffness_summary(const Eigen::MatrixXd& k) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k, Eigen::EigenvaluesOnly);
  return {k.trace(), eig.eigenvalues().minCoeff()};
}

StiffnessReport stiffness_report(const RobotGeometry& geom, const Pose& pose,
                                 const TensionBounds& bounds, const TensionSolver& solver,
                                 double step) {
  const EquilibriumProblem problem = make_problem(geom, pose, bounds);
  const SolverResult res = solver(problem);
  if (!res.converged()) throw Error("tension solver failed at the nominal pose");

  StiffnessReport report;
  const auto cables = cable_geometry(geom, pose);
  report.active = active_stiffness(cables, res.tension);
  report.total = total_stiffness_numeric(geom, pose, bounds, solver, step);
  report.passive = report.total - report.active;
  std::tie(report.active_trace, report.active_min_eigenvalue) = stiffness_summary(report.active);
  return report;
}

}  // namespace cdpr
