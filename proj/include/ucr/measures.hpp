#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ucr/doublystoch.hpp"
#include "ucr/prob.hpp"

namespace ucr {

enum class MeasureKind { shannon, renyi, tsallis, circular_variance, value_variance };

/// Declarative single-variable uncertainty measure. Logarithms are base 2.
/// renyi takes α ≥ 0 (α = +inf allowed); tsallis takes q > 0, with q = 1
/// read as its limit −Σ p ln p.
struct MeasureDescriptor {
  MeasureKind kind = MeasureKind::shannon;
  std::optional<double> param;
  std::vector<double> values;  ///< outcome values, value_variance only

  static MeasureDescriptor shannon() { return {MeasureKind::shannon, std::nullopt, {}}; }
  static MeasureDescriptor renyi(double alpha) { return {MeasureKind::renyi, alpha, {}}; }
  static MeasureDescriptor tsallis(double q) { return {MeasureKind::tsallis, q, {}}; }
  static MeasureDescriptor circular_variance() { return {MeasureKind::circular_variance, std::nullopt, {}}; }
  static MeasureDescriptor value_variance(std::vector<double> v) {
    return {MeasureKind::value_variance, std::nullopt, std::move(v)};
  }

  /// Throws BadParameter on an out-of-range parameter.
  void check() const;
};

const char* measure_kind_name(MeasureKind k) noexcept;

double evaluate(const MeasureDescriptor& m, const ProbVec& p);

/// Outcome of a sampled search for Δ = U(Dp) − U(p) < −1e-9.
struct MonotonicityReport {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double worst_violation = 0.0;  ///< most negative Δ observed
  struct Witness {
    std::vector<double> p;
    Eigen::MatrixXd D;
  };
  std::optional<Witness> witness;  ///< pair attaining worst_violation when violations > 0
};

inline constexpr double kViolationTol = 1e-9;

/// Random p against random_birkhoff D.
MonotonicityReport test_schur_concavity(const MeasureDescriptor& m, std::size_t d, std::uint64_t trials,
                                        std::uint64_t seed);

namespace source {
struct Sym {
  PermGroup group;
};
struct Rec {};
struct Explicit {
  std::vector<DoublyStochMatrix> matrices;
};
}  // namespace source

using MapSource = std::variant<source::Sym, source::Rec, source::Explicit>;

/// Like test_schur_concavity but with D drawn from sym_map (random weights),
/// rec_map of random channels, or cycled from an explicit list.
MonotonicityReport test_monotone_under(const MeasureDescriptor& m, const MapSource& src, std::size_t d,
                                       std::uint64_t trials, std::uint64_t seed);

/// Random distribution for property tests: mostly flat Dirichlet, with some
/// sparse draws and point masses to reach the simplex boundary.
ProbVec random_prob(Rng& rng, std::size_t d);

}  // namespace ucr
