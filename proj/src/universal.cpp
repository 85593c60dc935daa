#include "ucr/universal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "ucr/error.hpp"
#include "ucr/search.hpp"

namespace ucr {

ProbVec Combination::combine(const ProbVec& p, const ProbVec& q) const {
  return kind == CombinationKind::tensor ? tensor_product(p, q) : direct_sum(p, q, w);
}

std::size_t Combination::dim(std::size_t d_p, std::size_t d_q) const {
  return kind == CombinationKind::tensor ? d_p * d_q : d_p + d_q;
}

double top_k_sum(std::span<const double> v, std::size_t k) {
  std::vector<double> s(v.begin(), v.end());
  k = std::min(k, s.size());
  std::partial_sort(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), s.end(), std::greater<>());
  return std::accumulate(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
}

std::vector<double> upper_concave_envelope(const std::vector<double>& s) {
  // Andrew's monotone chain, upper hull only; x-coordinates are already sorted.
  const std::size_t n = s.size();
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      // Drop b when it lies on or below the chord from a to i.
      const double cross = (static_cast<double>(b) - static_cast<double>(a)) * (s[i] - s[a]) -
                           (s[b] - s[a]) * (static_cast<double>(i) - static_cast<double>(a));
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<double> env(n);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const std::size_t a = hull[h];
    const std::size_t b = hull[h + 1];
    for (std::size_t i = a; i <= b; ++i) {
      const double t = static_cast<double>(i - a) / static_cast<double>(b - a);
      env[i] = i == b ? s[b] : s[a] + t * (s[b] - s[a]);
    }
  }
  if (hull.size() == 1) env[0] = s[0];
  return env;
}

namespace {

struct EnvelopeBuild {
  std::vector<double> omega;
  std::vector<double> maxima;
  std::uint64_t evaluations = 0;
  bool converged = true;
};

// Builds the envelope for a distribution-valued map ψ ↦ v(ψ) of length D.
// `dist` evaluates v at a state; `table` evaluates it on a qubit grid.
EnvelopeBuild build_envelope(std::size_t state_dim, std::size_t D,
                             const std::function<std::vector<double>(const CVector&)>& dist,
                             const std::function<std::vector<std::vector<double>>(const kernels::QubitPoints&)>& table,
                             const MinimizeOptions& opts) {
  EnvelopeBuild out;
  std::vector<double> s(D + 1, 0.0);
  s[D] = 1.0;
  const CMatrix chart = CMatrix::Identity(static_cast<Eigen::Index>(state_dim), static_cast<Eigen::Index>(state_dim));
  for (std::size_t k = 1; k < D; ++k) {
    const search::StateObjective f = [&](const CVector& psi) { return -top_k_sum(dist(psi / psi.norm()), k); };
    const search::QubitBatchObjective batch = [&](const kernels::QubitPoints& pts, std::span<double> values) {
      const auto rows = table(pts);  // rows[i] = combined vector at point i
      for (std::size_t i = 0; i < pts.size(); ++i) values[i] = -top_k_sum(rows[i], k);
    };
    MinimizeOptions local = opts;
    local.seed = opts.seed + k;
    const search::Result r = search::minimize(state_dim, f, local, chart, state_dim == 2 ? &batch : nullptr);
    s[k] = std::clamp(-r.value, 0.0, 1.0);
    out.evaluations += static_cast<std::uint64_t>(r.evaluations);
    out.converged = out.converged && r.converged;
  }
  // Top-k sums are nondecreasing in k; enforce it on the numerical maxima.
  for (std::size_t k = 1; k <= D; ++k) s[k] = std::max(s[k], s[k - 1]);
  out.maxima.assign(s.begin() + 1, s.end());
  const std::vector<double> env = upper_concave_envelope(s);
  out.omega.resize(D);
  for (std::size_t k = 1; k <= D; ++k) out.omega[k - 1] = std::max(env[k] - env[k - 1], 0.0);
  // Concavity makes the increments nonincreasing; clean up roundoff before validation.
  for (std::size_t k = 1; k < D; ++k) out.omega[k] = std::min(out.omega[k], out.omega[k - 1]);
  const double total = std::accumulate(out.omega.begin(), out.omega.end(), 0.0);
  for (double& x : out.omega) x /= total;
  return out;
}

std::vector<double> state_outcomes(const Povm& M, const CVector& psi) {
  return outcome_dist(PureState::validate(psi), M).vec();
}

ProbVec row_at(const std::vector<std::vector<double>>& table, std::size_t i) {
  std::vector<double> v(table.size());
  for (std::size_t a = 0; a < table.size(); ++a) v[a] = table[a][i];
  return ProbVec::validate(v, true);
}

}  // namespace

UniversalVector universal_omega(const Povm& A, const Povm& B, Combination kind, const UniversalOptions& opts) {
  if (A.dim() != B.dim()) throw Error(Errc::dimension_mismatch, "POVMs act on different dimensions");
  if (kind.kind == CombinationKind::directsum && !(kind.w > 0.0 && kind.w < 1.0))
    throw Error(Errc::bad_parameter, "directsum weight must lie in (0, 1)");
  const std::size_t D = kind.dim(A.outcomes(), B.outcomes());
  const CMatrix chart = CMatrix::Identity(static_cast<Eigen::Index>(A.dim()), static_cast<Eigen::Index>(A.dim()));
  const auto dist = [&](const CVector& psi) {
    return kind.combine(ProbVec::validate(state_outcomes(A, psi)), ProbVec::validate(state_outcomes(B, psi))).vec();
  };
  const auto table = [&](const kernels::QubitPoints& pts) {
    const auto ta = search::qubit_outcome_table(A, chart, pts);
    const auto tb = search::qubit_outcome_table(B, chart, pts);
    std::vector<std::vector<double>> rows(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) rows[i] = kind.combine(row_at(ta, i), row_at(tb, i)).vec();
    return rows;
  };
  const EnvelopeBuild env = build_envelope(A.dim(), D, dist, table, opts.search);
  return UniversalVector{sorted_from_envelope(env.omega), kind, env.evaluations, env.maxima, env.converged};
}

UniversalCheck check_universal(const UniversalVector& U, const Povm& A, const Povm& B, std::uint64_t samples,
                               std::uint64_t seed) {
  if (A.dim() != B.dim()) throw Error(Errc::dimension_mismatch, "POVMs act on different dimensions");
  if (U.kind.dim(A.outcomes(), B.outcomes()) != U.omega.dim())
    throw Error(Errc::dimension_mismatch, "omega length does not match the combined outcome count");
  std::vector<double> omega_sums(U.omega.dim());
  std::partial_sum(U.omega.vec().begin(), U.omega.vec().end(), omega_sums.begin());

  Rng rng = make_rng(seed);
  UniversalCheck out;
  out.samples = samples;
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < samples; ++s) {
    const PureState psi = random_pure_state(rng, A.dim());
    const ProbVec combined = U.kind.combine(outcome_dist(psi, A), outcome_dist(psi, B));
    const LorenzProfile lp = lorenz(combined);
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < omega_sums.size(); ++k) margin = std::min(margin, omega_sums[k] - lp.partial_sums[k]);
    out.worst_margin = std::min(out.worst_margin, margin);
    if (margin < -kProbTol) ++out.violations;
  }
  return out;
}

SortedProbVec single_envelope(const Povm& M, const UniversalOptions& opts, bool* converged) {
  const CMatrix chart = CMatrix::Identity(static_cast<Eigen::Index>(M.dim()), static_cast<Eigen::Index>(M.dim()));
  const auto dist = [&](const CVector& psi) { return state_outcomes(M, psi); };
  const auto table = [&](const kernels::QubitPoints& pts) {
    const auto t = search::qubit_outcome_table(M, chart, pts);
    std::vector<std::vector<double>> rows(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) rows[i] = row_at(t, i).vec();
    return rows;
  };
  const EnvelopeBuild env = build_envelope(M.dim(), M.outcomes(), dist, table, opts.search);
  if (converged) *converged = env.converged;
  return sorted_from_envelope(env.omega);
}

TrivialPair trivial_pair(const Povm& A, const Povm& B, const UniversalOptions& opts) {
  if (A.dim() != B.dim()) throw Error(Errc::dimension_mismatch, "POVMs act on different dimensions");
  bool ca = true;
  bool cb = true;
  SortedProbVec u0 = single_envelope(A, opts, &ca);
  SortedProbVec v0 = single_envelope(B, opts, &cb);
  return TrivialPair{std::move(u0), std::move(v0), ca && cb};
}

double multi_pair_bound(const JointMeasureDescriptor& J, const std::vector<DistPair>& pairs) {
  if (pairs.empty()) throw Error(Errc::empty_list, "multi_pair_bound needs at least one pair");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& pair : pairs) best = std::min(best, eval_joint(J, pair));
  return best;
}

}  // namespace ucr
