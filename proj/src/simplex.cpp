#include "simplex.hpp"

#include <algorithm>
#include <cmath>

namespace cdpr::detail {

std::optional<Eigen::VectorXd> maximize_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                                           const Eigen::VectorXd& b, const Eigen::VectorXd& x0) {
  constexpr double kPivotEps = 1e-12;
  const int rows = static_cast<int>(a.rows());
  const int vars = static_cast<int>(a.cols());
  // Shift x = x0 + y⁺ − y⁻ so the slack basis is feasible.
  const Eigen::VectorXd rhs = (b - a * x0).cwiseMax(0.0);
  const int cols = 2 * vars + rows;

  // Tableau: rows [0, rows) are constraints, row `rows` holds reduced costs
  // (c_j − z_j) for a maximization.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(rows + 1, cols + 1);
  t.block(0, 0, rows, vars) = a;
  t.block(0, vars, rows, vars) = -a;
  t.block(0, 2 * vars, rows, rows).setIdentity();
  t.block(0, cols, rows, 1) = rhs;
  t.block(rows, 0, 1, vars) = c.transpose();
  t.block(rows, vars, 1, vars) = -c.transpose();

  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i) basis[i] = 2 * vars + i;

  const int max_pivots = 50 * (rows + cols) + 100;
  for (int pivot = 0;; ++pivot) {
    if (pivot >= max_pivots) return std::nullopt;

    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (t(rows, j) > kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < rows; ++i) {
      const double aij = t(i, enter);
      if (aij <= kPivotEps) continue;
      const double ratio = t(i, cols) / aij;
      if (leave < 0 || ratio < best - 1e-15 ||
          (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return std::nullopt;

    t.row(leave) /= t(leave, enter);
    for (int i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[leave] = enter;
  }

  Eigen::VectorXd y = Eigen::VectorXd::Zero(cols);
  for (int i = 0; i < rows; ++i) y[basis[i]] = t(i, cols);
  return (x0 + y.head(vars) - y.segment(vars, vars)).eval();
}

}  // namespace cdpr::detail
