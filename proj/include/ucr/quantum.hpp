#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ucr/joint.hpp"
#include "ucr/prob.hpp"
#include "ucr/rng.hpp"

namespace ucr {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

class PureState {
 public:
  /// Requires Σ|a_i|² within 1e-9 of 1.
  static PureState validate(const CVector& amplitudes);

  const CVector& amplitudes() const noexcept { return amps_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }

 private:
  explicit PureState(CVector a) : amps_(std::move(a)) {}
  CVector amps_;
};

class DensityMatrix {
 public:
  /// Hermitian to 1e-12, unit trace to 1e-9, eigenvalues ≥ −1e-9.
  static DensityMatrix validate(const CMatrix& m);
  static DensityMatrix from_pure(const PureState& psi);

  const CMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

 private:
  explicit DensityMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

class Povm {
 public:
  /// Each effect Hermitian PSD to 1e-9; effects sum to the identity to 1e-9.
  static Povm validate(std::vector<CMatrix> effects);

  const std::vector<CMatrix>& effects() const noexcept { return effects_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(effects_.front().rows()); }
  std::size_t outcomes() const noexcept { return effects_.size(); }

 private:
  explicit Povm(std::vector<CMatrix> e) : effects_(std::move(e)) {}
  std::vector<CMatrix> effects_;
};

class Basis {
 public:
  /// Requires |⟨v_i|v_j⟩ − δ_ij| ≤ 1e-9.
  static Basis validate(std::vector<CVector> vectors);
  static Basis computational(std::size_t d);

  const std::vector<CVector>& vectors() const noexcept { return vectors_; }
  std::size_t dim() const noexcept { return vectors_.size(); }
  /// Unitary whose columns are the basis vectors.
  CMatrix as_columns() const;

 private:
  explicit Basis(std::vector<CVector> v) : vectors_(std::move(v)) {}
  std::vector<CVector> vectors_;
};

ProbVec outcome_dist(const PureState& psi, const Povm& M);
ProbVec outcome_dist(const DensityMatrix& rho, const Povm& M);

/// Effects |v_i⟩⟨v_i|.
Povm projective_povm(const Basis& B);

/// η = max_{i,j} |⟨a_i|b_j⟩|.
double overlap_eta(const Basis& A, const Basis& B);

/// cos α |b₁⟩ + e^{iφ} sin α |b₂⟩ with α ∈ [0, π/2], φ ∈ [0, 2π).
PureState qubit_state(double alpha, double phi, const Basis& B);

/// J₂ of ((p, 1−p), (q, 1−q)) through its two-branch form: p + q − 2pq when
/// p and q sit on the same side of ½, 1 − p − q + 2pq otherwise.
double j2_qubit_closed_form(double p, double q);

/// ½(1 − η²): the minimum of J₂ over pure qubit states for two rank-1
/// projective measurements.
double qubit_j2_bound(const Basis& A, const Basis& B);

/// S₁: p, q on the same side of ½ (both ≥ ½ or both < ½); S₂ otherwise.
enum class QubitPartition { s1, s2 };
QubitPartition qubit_partition(double p, double q);

/// B with its vectors re-phased so that ⟨a₁|b₁⟩ and ⟨a₁|b₂⟩ are real and
/// nonnegative. The projectors are unchanged; in this chart
/// p(α, φ) = |cos α cos β + e^{iφ} sin α sin β|² with cos β = |⟨a₁|b₁⟩|.
Basis aligned_chart(const Basis& A, const Basis& B);

/// Basis {(cos β, sin β), (−sin β, cos β)}.
Basis rotated_real_basis(double beta);

struct MinimizeOptions {
  std::size_t grid_alpha = 181;  ///< qubit chart: α samples on [0, π/2]
  std::size_t grid_phi = 360;    ///< qubit chart: φ samples on [0, 2π)
  std::size_t refine = 5;        ///< qubit chart: best grid points refined by the simplex
  std::size_t restarts = 32;     ///< d > 2: multistart count
  std::uint64_t seed = 0;
  long max_iters = 20000;
  double ftol = 1e-12;
};

struct URBoundResult {
  double value = 0.0;
  PureState argmin_state;
  std::vector<double> argmin_chart;  ///< (α, φ) for qubits, 2d−2 hyperspherical angles otherwise
  std::string method;
  long evaluations = 0;
  std::size_t grid_alpha = 0;
  std::size_t grid_phi = 0;
  std::size_t restarts = 0;
  bool converged = true;
};

/// Minimum of J(outcome_dist(ψ, A), outcome_dist(ψ, B)) over pure states ψ.
/// Qubits: (α, φ) grid then simplex refinement. d > 2: multistart simplex over
/// the hyperspherical chart. The result is an upper bound on the true minimum.
URBoundResult minimize_joint(const JointMeasureDescriptor& J, const Povm& A, const Povm& B,
                             const MinimizeOptions& opts = {});

/// Basis overload; for qubits the chart is aligned_chart(A, B).
URBoundResult minimize_joint(const JointMeasureDescriptor& J, const Basis& A, const Basis& B,
                             const MinimizeOptions& opts = {});

/// Minimum of J₂ restricted to one partition of the qubit pure states.
URBoundResult minimize_qubit_partition(const Basis& A, const Basis& B, QubitPartition part,
                                       const MinimizeOptions& opts = {});

PureState random_pure_state(Rng& rng, std::size_t d);
/// Haar-random orthonormal basis (QR of a complex Gaussian matrix).
Basis random_basis(Rng& rng, std::size_t d);
/// Random full-rank mixed state (Ginibre ensemble).
DensityMatrix random_density(Rng& rng, std::size_t d);

}  // namespace ucr
