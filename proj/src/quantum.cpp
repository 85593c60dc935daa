#include "ucr/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "ucr/error.hpp"
#include "ucr/search.hpp"

namespace ucr {

namespace {

bool is_hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void check_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw Error(Errc::bad_parameter, std::string(what) + " has a non-finite entry");
}

}  // namespace

PureState PureState::validate(const CVector& amplitudes) {
  if (amplitudes.size() == 0) throw Error(Errc::invalid_state, "state must be nonempty");
  if (!amplitudes.allFinite()) throw Error(Errc::invalid_state, "state has a non-finite amplitude");
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-9) throw Error(Errc::invalid_state, "squared norm " + std::to_string(norm2));
  return PureState(amplitudes);
}

DensityMatrix DensityMatrix::validate(const CMatrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw Error(Errc::invalid_state, "density matrix must be square");
  check_finite(m, "density matrix");
  if (!is_hermitian(m, 1e-12)) throw Error(Errc::invalid_state, "density matrix is not Hermitian");
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > 1e-9) throw Error(Errc::invalid_state, "trace " + std::to_string(tr));
  const CMatrix h = 0.5 * (m + m.adjoint());
  const Eigen::SelfAdjointEigenSolver<CMatrix> eig(h, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-9) throw Error(Errc::invalid_state, "density matrix is not PSD");
  return DensityMatrix(h);
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

Povm Povm::validate(std::vector<CMatrix> effects) {
  if (effects.empty()) throw Error(Errc::bad_parameter, "POVM needs at least one effect");
  const Eigen::Index d = effects.front().rows();
  if (d == 0) throw Error(Errc::bad_parameter, "POVM effects must be nonempty");
  CMatrix total = CMatrix::Zero(d, d);
  for (std::size_t a = 0; a < effects.size(); ++a) {
    CMatrix& e = effects[a];
    if (e.rows() != d || e.cols() != d) throw Error(Errc::dimension_mismatch, "POVM effects differ in shape");
    check_finite(e, "POVM effect");
    if (!is_hermitian(e, 1e-9)) throw Error(Errc::bad_parameter, "effect " + std::to_string(a) + " is not Hermitian");
    e = 0.5 * (e + e.adjoint());
    const Eigen::SelfAdjointEigenSolver<CMatrix> eig(e, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-9) throw Error(Errc::bad_parameter, "effect " + std::to_string(a) + " is not PSD");
    total += e;
  }
  if ((total - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
    throw Error(Errc::not_normalized, "POVM effects do not sum to the identity");
  return Povm(std::move(effects));
}

Basis Basis::validate(std::vector<CVector> vectors) {
  const std::size_t d = vectors.size();
  if (d == 0) throw Error(Errc::bad_parameter, "basis must be nonempty");
  for (const auto& v : vectors) {
    if (static_cast<std::size_t>(v.size()) != d)
      throw Error(Errc::dimension_mismatch, "basis of " + std::to_string(d) + " vectors in dimension " + std::to_string(v.size()));
    if (!v.allFinite()) throw Error(Errc::bad_parameter, "basis vector has a non-finite entry");
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      if (std::abs(vectors[i].dot(vectors[j]) - target) > 1e-9)
        throw Error(Errc::bad_parameter, "basis is not orthonormal");
    }
  return Basis(std::move(vectors));
}

Basis Basis::computational(std::size_t d) {
  std::vector<CVector> v;
  for (std::size_t i = 0; i < d; ++i) v.push_back(CVector::Unit(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(i)));
  return validate(std::move(v));
}

CMatrix Basis::as_columns() const {
  const auto d = static_cast<Eigen::Index>(dim());
  CMatrix u(d, d);
  for (Eigen::Index i = 0; i < d; ++i) u.col(i) = vectors_[static_cast<std::size_t>(i)];
  return u;
}

namespace {

ProbVec finish_distribution(std::vector<double> raw) {
  double sum = 0.0;
  for (double& x : raw) {
    x = std::clamp(x, 0.0, 1.0);
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error(Errc::invalid_state, "outcome probabilities sum to " + std::to_string(sum));
  if (std::abs(sum - 1.0) > 1e-12)
    for (double& x : raw) x /= sum;
  return ProbVec::validate(raw);
}

}  // namespace

ProbVec outcome_dist(const PureState& psi, const Povm& M) {
  if (psi.dim() != M.dim()) throw Error(Errc::dimension_mismatch, "state and POVM dimensions differ");
  std::vector<double> raw;
  raw.reserve(M.outcomes());
  for (const auto& e : M.effects()) raw.push_back(psi.amplitudes().dot(e * psi.amplitudes()).real());
  return finish_distribution(std::move(raw));
}

ProbVec outcome_dist(const DensityMatrix& rho, const Povm& M) {
  if (rho.dim() != M.dim()) throw Error(Errc::dimension_mismatch, "state and POVM dimensions differ");
  std::vector<double> raw;
  raw.reserve(M.outcomes());
  for (const auto& e : M.effects()) raw.push_back((e * rho.matrix()).trace().real());
  return finish_distribution(std::move(raw));
}

Povm projective_povm(const Basis& B) {
  std::vector<CMatrix> effects;
  for (const auto& v : B.vectors()) effects.push_back(v * v.adjoint());
  return Povm::validate(std::move(effects));
}

double overlap_eta(const Basis& A, const Basis& B) {
  if (A.dim() != B.dim()) throw Error(Errc::dimension_mismatch, "bases differ in dimension");
  double eta = 0.0;
  for (const auto& a : A.vectors())
    for (const auto& b : B.vectors()) eta = std::max(eta, std::abs(a.dot(b)));
  return eta;
}

PureState qubit_state(double alpha, double phi, const Basis& B) {
  if (B.dim() != 2) throw Error(Errc::dimension_mismatch, "qubit_state needs a 2-dimensional basis");
  if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2.0))
    throw Error(Errc::bad_parameter, "alpha must lie in [0, pi/2]");
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) throw Error(Errc::bad_parameter, "phi must lie in [0, 2pi)");
  return PureState::validate(search::qubit_chart_state(alpha, phi, B.as_columns()));
}

double j2_qubit_closed_form(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
    throw Error(Errc::bad_parameter, "p and q must lie in [0, 1]");
  if (qubit_partition(p, q) == QubitPartition::s1) return p + q - 2.0 * p * q;
  return 1.0 - p - q + 2.0 * p * q;
}

QubitPartition qubit_partition(double p, double q) {
  return (p >= 0.5) == (q >= 0.5) ? QubitPartition::s1 : QubitPartition::s2;
}

double qubit_j2_bound(const Basis& A, const Basis& B) {
  if (A.dim() != 2 || B.dim() != 2) throw Error(Errc::dimension_mismatch, "qubit bound needs 2-dimensional bases");
  const double eta = overlap_eta(A, B);
  return 0.5 * (1.0 - eta * eta);
}

Basis aligned_chart(const Basis& A, const Basis& B) {
  if (A.dim() != B.dim()) throw Error(Errc::dimension_mismatch, "bases differ in dimension");
  std::vector<CVector> v = B.vectors();
  const CVector& a1 = A.vectors().front();
  for (auto& b : v) {
    const std::complex<double> overlap = a1.dot(b);
    if (std::abs(overlap) > 0.0) b *= std::conj(overlap) / std::abs(overlap);
  }
  return Basis::validate(std::move(v));
}

Basis rotated_real_basis(double beta) {
  CVector x1(2), x2(2);
  x1 << std::cos(beta), std::sin(beta);
  x2 << -std::sin(beta), std::cos(beta);
  return Basis::validate({x1, x2});
}

namespace {

URBoundResult finish(const search::Result& r, const JointMeasureDescriptor& J, const Povm& A, const Povm& B,
                     const MinimizeOptions& opts) {
  const PureState psi = PureState::validate(r.state);
  const double value = eval_joint(J, DistPair{outcome_dist(psi, A), outcome_dist(psi, B)});
  const bool qubit = psi.dim() == 2;
  return URBoundResult{value,
                       psi,
                       r.chart_point,
                       r.method,
                       r.evaluations,
                       qubit ? opts.grid_alpha : 0,
                       qubit ? opts.grid_phi : 0,
                       qubit ? opts.refine : opts.restarts,
                       r.converged};
}

URBoundResult minimize_with_chart(const JointMeasureDescriptor& J, const Povm& A, const Povm& B,
                                  const MinimizeOptions& opts, const CMatrix& chart) {
  J.check();
  if (A.dim() != B.dim()) throw Error(Errc::dimension_mismatch, "POVMs act on different dimensions");
  const std::size_t d = A.dim();
  const search::StateObjective f = [&](const CVector& psi) {
    const PureState state = PureState::validate(psi);
    return eval_joint(J, DistPair{outcome_dist(state, A), outcome_dist(state, B)});
  };
  if (d != 2) return finish(search::minimize(d, f, opts, chart), J, A, B, opts);

  const search::QubitBatchObjective batch = [&](const kernels::QubitPoints& pts, std::span<double> out) {
    const auto pa = search::qubit_outcome_table(A, chart, pts);
    const auto pb = search::qubit_outcome_table(B, chart, pts);
    if (J.kind == JointKind::j2 && pa.size() == 2 && pb.size() == 2) {
      kernels::j2_binary(pa[0], pb[0], out);
      return;
    }
    std::vector<double> p(pa.size()), q(pb.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t a = 0; a < pa.size(); ++a) p[a] = pa[a][i];
      for (std::size_t b = 0; b < pb.size(); ++b) q[b] = pb[b][i];
      out[i] = eval_joint(J, DistPair{ProbVec::validate(p, true), ProbVec::validate(q, true)});
    }
  };
  return finish(search::minimize(d, f, opts, chart, &batch), J, A, B, opts);
}

}  // namespace

URBoundResult minimize_joint(const JointMeasureDescriptor& J, const Povm& A, const Povm& B,
                             const MinimizeOptions& opts) {
  return minimize_with_chart(J, A, B, opts, CMatrix::Identity(static_cast<Eigen::Index>(A.dim()),
                                                              static_cast<Eigen::Index>(A.dim())));
}

URBoundResult minimize_joint(const JointMeasureDescriptor& J, const Basis& A, const Basis& B,
                             const MinimizeOptions& opts) {
  if (A.dim() != B.dim()) throw Error(Errc::dimension_mismatch, "bases differ in dimension");
  const CMatrix chart = A.dim() == 2 ? aligned_chart(A, B).as_columns() : B.as_columns();
  return minimize_with_chart(J, projective_povm(A), projective_povm(B), opts, chart);
}

URBoundResult minimize_qubit_partition(const Basis& A, const Basis& B, QubitPartition part,
                                       const MinimizeOptions& opts) {
  if (A.dim() != 2 || B.dim() != 2) throw Error(Errc::dimension_mismatch, "partitioned minimization is qubit-only");
  const CMatrix chart = aligned_chart(A, B).as_columns();
  const CVector a1 = A.vectors().front();
  const CVector b1 = B.vectors().front();
  const double inf = std::numeric_limits<double>::infinity();
  const auto branch = [&](double p, double q) {
    p = std::clamp(p, 0.0, 1.0);
    q = std::clamp(q, 0.0, 1.0);
    return qubit_partition(p, q) == part ? j2_qubit_closed_form(p, q) : inf;
  };
  const search::StateObjective f = [&](const CVector& psi) {
    const CVector unit = psi / psi.norm();
    return branch(std::norm(a1.dot(unit)), std::norm(b1.dot(unit)));
  };
  const Povm pa = projective_povm(A);
  const Povm pb = projective_povm(B);
  const search::QubitBatchObjective batch = [&](const kernels::QubitPoints& pts, std::span<double> out) {
    const auto ta = search::qubit_outcome_table(pa, chart, pts);
    const auto tb = search::qubit_outcome_table(pb, chart, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = branch(ta[0][i], tb[0][i]);
  };
  const search::Result r = search::minimize(2, f, opts, chart, &batch);
  const PureState psi = PureState::validate(r.state / r.state.norm());
  return URBoundResult{r.value,     psi,           r.chart_point, r.method + "+partition", r.evaluations,
                       opts.grid_alpha, opts.grid_phi, opts.refine,   r.converged && std::isfinite(r.value)};
}

PureState random_pure_state(Rng& rng, std::size_t d) {
  std::normal_distribution<double> gauss;
  CVector v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {gauss(rng), gauss(rng)};
  return PureState::validate(v / v.norm());
}

Basis random_basis(Rng& rng, std::size_t d) {
  std::normal_distribution<double> gauss;
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = {gauss(rng), gauss(rng)};
  const Eigen::HouseholderQR<CMatrix> qr(z);
  const CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  std::vector<CVector> v;
  for (Eigen::Index j = 0; j < n; ++j) v.push_back(q.col(j));
  return Basis::validate(std::move(v));
}

DensityMatrix random_density(Rng& rng, std::size_t d) {
  std::normal_distribution<double> gauss;
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = {gauss(rng), gauss(rng)};
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::validate(0.5 * (rho + rho.adjoint()));
}

}  // namespace ucr
