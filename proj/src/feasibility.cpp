#include "cdpr/feasibility.hpp"

#include "cdpr/errors.hpp"
#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace cdpr {

namespace {

constexpr double kRankTolerance = 1e-12;
constexpr double kVertexRounding = 1e-9;

bool lexicographic_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Calls fn(indices) for every r-subset of {0..m-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int m, int r, Fn&& fn) {
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int k = r - 1;
    while (k >= 0 && idx[k] == m - r + k) --k;
    if (k < 0) return;
    ++idx[k];
    for (int j = k + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

NullSpaceParam null_space_param(const EquilibriumProblem& problem) {
  const Eigen::MatrixXd& w = problem.wrench_matrix;
  const int n = static_cast<int>(w.rows());
  const int m = static_cast<int>(w.cols());
  if (n == 0) {
    return {Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Identity(m, m)};
  }

  // Wᵀ·P = Q·R, so W = P·Rᵀ·Q₁ᵀ. The min-norm solution lives in span(Q₁) and
  // the remaining columns of Q span null(W).
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(w.transpose());
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(n, n).triangularView<Eigen::Upper>();
  const double scale = std::abs(r(0, 0));
  if (!(scale > 0.0) || std::abs(r(n - 1, n - 1)) <= kRankTolerance * scale) {
    throw SingularConfigurationError("wrench matrix is rank deficient");
  }
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
  const Eigen::VectorXd rhs = qr.colsPermutation().transpose() * (-problem.external_wrench);
  const Eigen::VectorXd y =
      r.transpose().triangularView<Eigen::Lower>().solve(rhs);
  return {q.leftCols(n) * y, q.rightCols(m - n)};
}

bool is_feasible(const Eigen::VectorXd& tension, const EquilibriumProblem& problem,
                 double tol) {
  if (tension.size() != problem.cable_count()) return false;
  const double scale = std::max(1.0, problem.external_wrench.norm());
  if (problem.residual(tension).norm() > tol * scale) return false;
  const auto& b = problem.bounds;
  return ((tension - b.lower()).array() >= -tol).all() &&
         ((b.upper() - tension).array() >= -tol).all();
}

double normalized_slack(const Eigen::VectorXd& tension, const TensionBounds& bounds) {
  const Eigen::ArrayXd w = bounds.width().array();
  const Eigen::ArrayXd lo = (tension - bounds.lower()).array() / w;
  const Eigen::ArrayXd hi = (bounds.upper() - tension).array() / w;
  return std::min(lo.minCoeff(), hi.minCoeff());
}

MaxMinSlack max_min_slack(const EquilibriumProblem& problem, const NullSpaceParam& param) {
  const auto& bounds = problem.bounds;
  const int m = problem.cable_count();
  const int r = param.redundancy();
  if (r == 0) {
    return {param.particular, normalized_slack(param.particular, bounds)};
  }

  // Variables (lambda, t): maximize t with every normalized slack >= t.
  Eigen::MatrixXd a(2 * m, r + 1);
  Eigen::VectorXd b(2 * m);
  for (int i = 0; i < m; ++i) {
    const double width = bounds.upper()[i] - bounds.lower()[i];
    const Eigen::RowVectorXd row = param.basis.row(i) / width;
    a.row(2 * i) << -row, 1.0;
    b[2 * i] = (param.particular[i] - bounds.lower()[i]) / width;
    a.row(2 * i + 1) << row, 1.0;
    b[2 * i + 1] = (bounds.upper()[i] - param.particular[i]) / width;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(r + 1);
  c[r] = 1.0;
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(r + 1);
  x0[r] = b.minCoeff();

  const auto x = detail::maximize_lp(c, a, b, x0);
  // The slack LP is bounded (N has full column rank), so a failure here can
  // only be the pivot cap; fall back to the particular solution.
  const Eigen::VectorXd tension = x ? param.tension(x->head(r)) : param.particular;
  return {tension, normalized_slack(tension, bounds)};
}

std::optional<Eigen::VectorXd> interior_point(const EquilibriumProblem& problem,
                                              double margin) {
  const auto best = max_min_slack(problem, null_space_param(problem));
  if (best.slack > kInteriorSlack && best.slack >= margin) return best.tension;
  return std::nullopt;
}

std::vector<Eigen::VectorXd> enumerate_vertices(const EquilibriumProblem& problem) {
  const int r = problem.redundancy();
  if (r > kMaxVertexOracleRedundancy) {
    throw UnsupportedError("vertex enumeration supports redundancy <= " +
                           std::to_string(kMaxVertexOracleRedundancy) + ", got " +
                           std::to_string(r));
  }
  const NullSpaceParam param = null_space_param(problem);
  const auto& lb = problem.bounds.lower();
  const auto& ub = problem.bounds.upper();
  const int m = problem.cable_count();
  const Eigen::VectorXd band = kVertexRounding * problem.bounds.width();

  std::vector<Eigen::VectorXd> vertices;
  std::set<std::vector<long long>> seen;
  auto accept = [&](Eigen::VectorXd tau) {
    if (((tau - lb).array() < -band.array()).any() ||
        ((ub - tau).array() < -band.array()).any()) {
      return;
    }
    tau = tau.cwiseMax(lb).cwiseMin(ub);
    std::vector<long long> key(m);
    for (int i = 0; i < m; ++i) key[i] = std::llround(tau[i] / kVertexRounding);
    if (seen.insert(std::move(key)).second) vertices.push_back(std::move(tau));
  };

  if (r == 0) {
    accept(param.particular);
    return vertices;
  }

  for_each_subset(m, r, [&](const std::vector<int>& active) {
    Eigen::MatrixXd block(r, r);
    for (int k = 0; k < r; ++k) block.row(k) = param.basis.row(active[k]);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(block);
    if (!lu.isInvertible()) return;
    for (int sides = 0; sides < (1 << r); ++sides) {
      Eigen::VectorXd target(r);
      for (int k = 0; k < r; ++k) {
        const int i = active[k];
        target[k] = ((sides >> k) & 1 ? ub[i] : lb[i]) - param.particular[i];
      }
      Eigen::VectorXd tau = param.tension(lu.solve(target));
      for (int k = 0; k < r; ++k) {
        const int i = active[k];
        tau[i] = (sides >> k) & 1 ? ub[i] : lb[i];
      }
      accept(std::move(tau));
    }
  });

  std::sort(vertices.begin(), vertices.end(), lexicographic_less);
  return vertices;
}

}  // namespace cdpr
