#pragma once

#include "cdpr/errors.hpp"
#include "cdpr/solvers.hpp"

namespace cdpr::detail {

inline void check_config(const SolverConfig& cfg) {
  if (!(cfg.tolerance > 0.0) || cfg.max_iterations < 1 || !(cfg.armijo_slope > 0.0) ||
      !(cfg.armijo_slope < 0.5) || !(cfg.backtrack_shrink > 0.0) ||
      !(cfg.backtrack_shrink < 1.0)) {
    throw InvalidArgumentError("invalid solver configuration");
  }
}

}  // namespace cdpr::detail
