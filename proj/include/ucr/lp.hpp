#pragma once

#include <Eigen/Dense>

namespace ucr::lp {

struct FeasibilityResult {
  bool feasible = false;
  double infeasibility = 0.0;  ///< optimal Phase-I objective (sum of artificials)
  long pivots = 0;
};

/// Decides whether {x >= 0 : A x = b} is nonempty with a dense Phase-I
/// simplex under Bland's rule. Declared feasible when the Phase-I optimum is
/// at most `tol`.
FeasibilityResult phase_one(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol = 1e-9);

}  // namespace ucr::lp
