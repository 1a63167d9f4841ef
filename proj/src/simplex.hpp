#pragma once

#include <Eigen/Dense>

#include <optional>

namespace cdpr::detail {

/// maximize c·x subject to A·x <= b with x free.
///
/// `x0` must satisfy A·x0 <= b. Dense tableau simplex with Bland's rule;
/// meant for the handful of variables and constraints met here. Returns
/// nullopt if the problem is unbounded or the pivot limit is hit.
std::optional<Eigen::VectorXd> maximize_lp(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                                           const Eigen::VectorXd& b, const Eigen::VectorXd& x0);

}  // namespace cdpr::detail
