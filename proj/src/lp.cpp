#include "ucr/lp.hpp"

#include <vector>

#include "ucr/error.hpp"

namespace ucr::lp {

namespace {

constexpr double kPivotEps = 1e-12;

}  // namespace

FeasibilityResult phase_one(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m) throw Error(Errc::dimension_mismatch, "LP right-hand side length differs from row count");

  // Tableau columns: n structural, m artificial, 1 right-hand side.
  // Row m holds reduced costs of the Phase-I objective (sum of artificials).
  const Eigen::Index rhs = n + m;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * A.row(i);
    t(i, n + i) = 1.0;
    t(i, rhs) = sign * b(i);
    basis[static_cast<std::size_t>(i)] = n + i;
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    t.row(m).head(n) -= t.row(i).head(n);
    t(m, rhs) -= t(i, rhs);
  }

  FeasibilityResult result;
  // Bland's rule cannot cycle; the cap only guards against numerical stalls.
  const long max_pivots = 50 * static_cast<long>(n + m) + 1000;
  while (result.pivots < max_pivots) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (t(m, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best_ratio = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = t(i, enter);
      if (a <= kPivotEps) continue;
      const double ratio = t(i, rhs) / a;
      if (leave < 0 || ratio < best_ratio - 1e-15 ||
          (ratio <= best_ratio + 1e-15 && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen for a Phase-I objective bounded below by 0

    const double pivot = t(leave, enter);
    t.row(leave) /= pivot;
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double factor = t(i, enter);
      if (factor != 0.0) t.row(i) -= factor * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
    ++result.pivots;
  }

  result.infeasibility = -t(m, rhs);
  result.feasible = result.infeasibility <= tol;
  return result;
}

}  // namespace ucr::lp
