#include "cdpr/errors.hpp"
#include "cdpr/scenario.hpp"
#include "format.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace cdpr {

EquilibriumProblem LevelsProblem::problem() const {
  Eigen::MatrixXd w(1, 2);
  w << w1, w2;
  return EquilibriumProblem(w, Eigen::VectorXd::Constant(1, we), TensionBounds(lower, upper, 2));
}

LevelsProblem levels_problem(std::string_view id, double lower, double upper) {
  LevelsProblem p;
  p.id = std::string(id);
  p.lower = lower;
  p.upper = upper;
  if (id == "a") {
    p.w1 = -7.0;
    p.w2 = 20.0;
    p.we = -1790.0;
  } else if (id == "b") {
    p.w1 = -1.0;
    p.w2 = 50.0;
    p.we = -945.0;
  } else if (id == "c") {
    p.w1 = 1.0;
    p.w2 = 50.0;
    p.we = -1055.0;
  } else {
    throw InvalidArgumentError("unknown levels test '" + std::string(id) + "' (expected a, b or c)");
  }
  return p;
}

double levels_objective(Method method, const Eigen::VectorXd& tension, const TensionBounds& bounds,
                        PreloadParam eta, const Eigen::VectorXd& lp_cost) {
  switch (method) {
    case Method::ACS:
      return barrier_objective(tension, bounds, BarrierWeights::from_preload(eta));
    case Method::AC:
      return barrier_objective(tension, bounds, BarrierWeights{});
    case Method::APC:
      return 0.5 * (tension - preload_target(bounds, eta)).squaredNorm();
    case Method::QP:
      return 0.5 * (tension - preload_target(bounds, PreloadParam(0.5))).squaredNorm();
    case Method::LP:
      return lp_cost.dot(tension);
  }
  throw InvalidArgumentError("unknown method");
}

void write_levels_csv(std::ostream& out, const LevelsProblem& test, Method method,
                      PreloadParam eta, int grid, const Eigen::VectorXd& lp_cost) {
  if (grid < 2) throw InvalidArgumentError("grid size must be at least 2");
  const EquilibriumProblem problem = test.problem();
  const TensionBounds& bounds = problem.bounds;

  out << "# test," << test.id << '\n';
  out << "# line,w1," << detail::fmt(test.w1) << ",w2," << detail::fmt(test.w2) << ",we,"
      << detail::fmt(test.we) << '\n';
  out << "# bounds," << detail::fmt(test.lower) << ',' << detail::fmt(test.upper) << '\n';
  out << "# solver," << to_string(method) << ",eta," << detail::fmt(eta.value()) << '\n';
  for (Method m : {Method::LP, Method::QP, Method::AC, Method::APC, Method::ACS}) {
    const SolverResult r = solve(m, problem, eta, {}, lp_cost);
    out << "# optimum," << to_string(m) << ',';
    if (r.converged()) {
      out << detail::fmt(r.tension[0]) << ',' << detail::fmt(r.tension[1]);
    } else {
      out << to_string(r.status) << ',';
    }
    out << '\n';
  }

  const double h = (test.upper - test.lower) / grid;
  std::vector<double> values(static_cast<std::size_t>(grid) * grid);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  Eigen::VectorXd tau(2);
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      tau << test.lower + (i + 0.5) * h, test.lower + (j + 0.5) * h;
      const double v = levels_objective(method, tau, bounds, eta, lp_cost);
      values[static_cast<std::size_t>(i) * grid + j] = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double span = hi > lo ? hi - lo : 1.0;
  out << "tau_1,tau_2,value\n";
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double v = (values[static_cast<std::size_t>(i) * grid + j] - lo) / span;
      out << detail::fmt(test.lower + (i + 0.5) * h) << ',' << detail::fmt(test.lower + (j + 0.5) * h)
          << ',' << detail::fmt(v) << '\n';
    }
  }
}

}  // namespace cdpr
