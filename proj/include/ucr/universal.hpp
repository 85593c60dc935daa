#pragma once

#include <cstdint>
#include <vector>

#include "ucr/joint.hpp"
#include "ucr/prob.hpp"
#include "ucr/quantum.hpp"

namespace ucr {

enum class CombinationKind { tensor, directsum };

struct Combination {
  CombinationKind kind = CombinationKind::tensor;
  double w = 0.5;  ///< directsum weight on the first measurement

  static Combination tensor() { return {CombinationKind::tensor, 0.5}; }
  static Combination directsum(double w = 0.5) { return {CombinationKind::directsum, w}; }

  ProbVec combine(const ProbVec& p, const ProbVec& q) const;
  std::size_t dim(std::size_t d_p, std::size_t d_q) const;
};

/// A vector that majorizes the combined outcome distribution of every state.
struct UniversalVector {
  SortedProbVec omega;
  Combination kind;
  std::uint64_t samples_used = 0;         ///< objective evaluations spent on the maximizations
  std::vector<double> max_partial_sums;  ///< best-found s_k for k = 1..D
  bool converged = true;
};

struct UniversalOptions {
  MinimizeOptions search;  ///< chart grid / restarts / seed / ftol for each per-k maximization
};

/// For every k, maximizes the top-k sum of the combined distribution over
/// pure states, then takes the upper concave envelope of (k, s_k) with
/// s_0 = 0 and s_D = 1. omega is the envelope's increments.
UniversalVector universal_omega(const Povm& A, const Povm& B, Combination kind, const UniversalOptions& opts = {});

struct UniversalCheck {
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  double worst_margin = 0.0;  ///< min over states and k of (Ω_k − C_k); negative means a violation
};

/// Counts random pure states whose combined distribution omega fails to
/// majorize (tolerance 1e-9).
UniversalCheck check_universal(const UniversalVector& U, const Povm& A, const Povm& B, std::uint64_t samples,
                               std::uint64_t seed);

struct TrivialPair {
  SortedProbVec u0;
  SortedProbVec v0;
  bool converged = true;
};

/// Per-measurement envelopes: u0 ≻ p(ρ) and v0 ≻ q(ρ) for every state.
TrivialPair trivial_pair(const Povm& A, const Povm& B, const UniversalOptions& opts = {});

/// Envelope of a single measurement (the u0 half of trivial_pair).
SortedProbVec single_envelope(const Povm& M, const UniversalOptions& opts, bool* converged = nullptr);

/// min_j J(pairs[j]).
double multi_pair_bound(const JointMeasureDescriptor& J, const std::vector<DistPair>& pairs);

/// Upper concave envelope of (k, s_k), k = 0..D, evaluated at the integers.
std::vector<double> upper_concave_envelope(const std::vector<double>& s);

/// Sum of the k largest entries.
double top_k_sum(std::span<const double> v, std::size_t k);

}  // namespace ucr
