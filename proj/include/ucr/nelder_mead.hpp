#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ucr {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;  ///< spread of simplex values fell below ftol before max_iters
};

using Objective = std::function<double(std::span<const double>)>;

/// Downhill simplex with standard coefficients (reflect 1, expand 2,
/// contract ½, shrink ½). Converges when max − min of the simplex values is
/// at most ftol; on convergence the search is restarted once around the best
/// vertex with the initial step scaled by 1e-2 to guard against a collapsed
/// simplex.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, std::span<const double> step,
                             long max_iters, double ftol);

}  // namespace ucr
