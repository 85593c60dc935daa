#pragma once

// Minimization over pure states, shared by the bound computation and the
// universal-vector maximizations.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ucr/kernels.hpp"
#include "ucr/quantum.hpp"

namespace ucr::search {

using StateObjective = std::function<double(const CVector&)>;
/// Fills out[i] with the objective at qubit chart point i.
using QubitBatchObjective = std::function<void(const kernels::QubitPoints&, std::span<double>)>;

struct Result {
  double value = 0.0;
  CVector state;
  std::vector<double> chart_point;
  long evaluations = 0;
  bool converged = true;
  std::string method;
};

/// cos α |c₁⟩ + e^{iφ} sin α |c₂⟩ for chart columns c.
CVector qubit_chart_state(double alpha, double phi, const CMatrix& chart);

/// Hyperspherical chart: angles[0..d−2] are polar, angles[d−1..2d−3] relative phases.
CVector sphere_chart_state(std::span<const double> angles, const CMatrix& chart);

/// Chart coordinates (α, φ) of a qubit state, α ∈ [0, π/2], φ ∈ [0, 2π).
std::vector<double> qubit_chart_coords(const CVector& psi, const CMatrix& chart);

/// Minimizes f over unit vectors of C^d (modulo global phase). For d = 2 the
/// coarse grid uses `batch` when given, else f point by point.
Result minimize(std::size_t d, const StateObjective& f, const MinimizeOptions& opts, const CMatrix& chart,
                const QubitBatchObjective* batch = nullptr);

/// Expected outcome probabilities of a qubit POVM on every chart point:
/// table[a][i] = ⟨ψ_i|E_a|ψ_i⟩.
std::vector<std::vector<double>> qubit_outcome_table(const Povm& M, const CMatrix& chart,
                                                     const kernels::QubitPoints& pts);

}  // namespace ucr::search
