#include "ucr/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ucr/error.hpp"
#include "ucr/nelder_mead.hpp"

namespace ucr::search {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phase(double x) {
  x = std::fmod(x, 2.0 * kPi);
  if (x < 0.0) x += 2.0 * kPi;
  return x >= 2.0 * kPi ? 0.0 : x;
}

}  // namespace

CVector qubit_chart_state(double alpha, double phi, const CMatrix& chart) {
  return std::cos(alpha) * chart.col(0) + std::polar(std::sin(alpha), phi) * chart.col(1);
}

CVector sphere_chart_state(std::span<const double> angles, const CMatrix& chart) {
  const auto d = chart.rows();
  CVector coeff(d);
  double radius = 1.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    const double phase = k == 0 ? 0.0 : angles[static_cast<std::size_t>(d - 1 + k - 1)];
    double modulus = radius;
    if (k + 1 < d) {
      modulus = radius * std::cos(angles[static_cast<std::size_t>(k)]);
      radius *= std::sin(angles[static_cast<std::size_t>(k)]);
    }
    coeff(k) = std::polar(modulus, phase);
  }
  return chart * coeff;
}

std::vector<double> qubit_chart_coords(const CVector& psi, const CMatrix& chart) {
  const CVector c = chart.adjoint() * psi;
  const double alpha = std::atan2(std::abs(c(1)), std::abs(c(0)));
  double phi = 0.0;
  if (std::abs(c(1)) > 0.0) phi = std::arg(c(1)) - (std::abs(c(0)) > 0.0 ? std::arg(c(0)) : 0.0);
  return {alpha, wrap_phase(phi)};
}

std::vector<std::vector<double>> qubit_outcome_table(const Povm& M, const CMatrix& chart,
                                                     const kernels::QubitPoints& pts) {
  if (M.dim() != 2) throw Error(Errc::dimension_mismatch, "qubit outcome table needs a qubit POVM");
  std::vector<std::vector<double>> table;
  table.reserve(M.outcomes());
  for (const auto& e : M.effects()) {
    const CMatrix local = chart.adjoint() * e * chart;
    const kernels::QubitEffect coeffs{local(0, 0).real(), local(1, 1).real(), local(0, 1).real(), local(0, 1).imag()};
    std::vector<double> out(pts.size());
    kernels::expectation(coeffs, pts, out);
    table.push_back(std::move(out));
  }
  return table;
}

namespace {

Result minimize_qubit(const StateObjective& f, const MinimizeOptions& opts, const CMatrix& chart,
                      const QubitBatchObjective* batch) {
  const kernels::QubitPoints grid = kernels::qubit_grid(opts.grid_alpha, opts.grid_phi);
  std::vector<double> values(grid.size());
  if (batch) {
    (*batch)(grid, values);
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i)
      values[i] = f(qubit_chart_state(grid.alpha[i], grid.phi[i], chart));
  }

  Result best;
  best.method = "qubit-grid+nelder-mead";
  best.evaluations = static_cast<long>(grid.size());
  best.value = std::numeric_limits<double>::infinity();

  // Refine from the `refine` lowest grid values, taken in order via repeated argmin.
  std::vector<double> pool = values;
  const double step[2] = {(kPi / 2.0) / static_cast<double>(opts.grid_alpha - 1),
                          2.0 * kPi / static_cast<double>(opts.grid_phi)};
  const Objective chart_objective = [&](std::span<const double> x) {
    return f(qubit_chart_state(x[0], x[1], chart));
  };
  bool best_converged = true;
  for (std::size_t r = 0; r < std::max<std::size_t>(opts.refine, 1); ++r) {
    const std::size_t idx = kernels::argmin(pool);
    if (!std::isfinite(pool[idx])) break;
    pool[idx] = std::numeric_limits<double>::infinity();
    const NelderMeadResult nm = nelder_mead(chart_objective, {grid.alpha[idx], grid.phi[idx]}, step, opts.max_iters, opts.ftol);
    best.evaluations += nm.evaluations;
    double value = nm.value;
    std::vector<double> x = nm.x;
    if (values[idx] < value) {  // refinement never reports worse than its start
      value = values[idx];
      x = {grid.alpha[idx], grid.phi[idx]};
    }
    if (value < best.value) {
      best.value = value;
      best.state = qubit_chart_state(x[0], x[1], chart);
      best_converged = nm.converged;
    }
  }
  if (!std::isfinite(best.value)) {
    const std::size_t idx = kernels::argmin(values);
    best.state = qubit_chart_state(grid.alpha[idx], grid.phi[idx], chart);
    best.value = values[idx];
    best_converged = false;
  }
  best.converged = best_converged;
  best.chart_point = qubit_chart_coords(best.state, chart);
  return best;
}

Result minimize_general(std::size_t d, const StateObjective& f, const MinimizeOptions& opts, const CMatrix& chart) {
  const std::size_t n = 2 * d - 2;
  const Objective chart_objective = [&](std::span<const double> x) { return f(sphere_chart_state(x, chart)); };
  const std::vector<double> step(n, 0.3);
  constexpr std::size_t kSeedsPerRestart = 32;

  Result best;
  best.method = "multistart-nelder-mead";
  best.value = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  // Restarts are independent given (seed, restart index); the reduction keeps
  // the lowest value and breaks ties by restart index.
  for (std::size_t r = 0; r < std::max<std::size_t>(opts.restarts, 1); ++r) {
    Rng rng = make_rng(opts.seed, r);
    std::vector<double> start;
    double start_value = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < kSeedsPerRestart; ++s) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = (k + 1 < d ? kPi / 2.0 : 2.0 * kPi) * uniform01(rng);
      const double v = chart_objective(x);
      ++best.evaluations;
      if (v < start_value) {
        start_value = v;
        start = std::move(x);
      }
    }
    const NelderMeadResult nm = nelder_mead(chart_objective, start, step, opts.max_iters, opts.ftol);
    best.evaluations += nm.evaluations;
    if (nm.value < best.value) {
      best.value = nm.value;
      best_x = nm.x;
      best.converged = nm.converged;
    }
  }
  best.chart_point = best_x;
  best.state = sphere_chart_state(best_x, chart);
  return best;
}

}  // namespace

Result minimize(std::size_t d, const StateObjective& f, const MinimizeOptions& opts, const CMatrix& chart,
                const QubitBatchObjective* batch) {
  if (d < 1) throw Error(Errc::bad_parameter, "dimension must be positive");
  if (static_cast<std::size_t>(chart.rows()) != d || static_cast<std::size_t>(chart.cols()) != d)
    throw Error(Errc::dimension_mismatch, "chart basis has the wrong shape");
  if (d == 1) {
    Result r;
    r.state = chart.col(0);
    r.value = f(r.state);
    r.evaluations = 1;
    r.method = "trivial";
    return r;
  }
  if (d == 2) {
    if (opts.grid_alpha < 2 || opts.grid_phi < 1) throw Error(Errc::bad_parameter, "qubit grid is too small");
    return minimize_qubit(f, opts, chart, batch);
  }
  return minimize_general(d, f, opts, chart);
}

}  // namespace ucr::search
