#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ucr {

/// Tolerance shared by every probability-sum and majorization comparison.
inline constexpr double kProbTol = 1e-9;

/// A finite probability distribution. Entries are clamped to [0, 1] and sum
/// to one within kProbTol; the only way to obtain one is through validate().
class ProbVec {
 public:
  static ProbVec validate(std::span<const double> raw, bool normalize = false);

  std::size_t dim() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }
  const std::vector<double>& vec() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const ProbVec&, const ProbVec&) = default;

 private:
  explicit ProbVec(std::vector<double> e) : entries_(std::move(e)) {}
  std::vector<double> entries_;
};

/// Entries of a ProbVec in nonincreasing order.
class SortedProbVec {
 public:
  std::size_t dim() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }
  const std::vector<double>& vec() const noexcept { return entries_; }

  /// Reinterprets as a distribution (always valid: same multiset as the source).
  ProbVec as_prob() const { return ProbVec::validate(entries_); }

  friend bool operator==(const SortedProbVec&, const SortedProbVec&) = default;

 private:
  friend SortedProbVec sort_desc(const ProbVec& p);
  friend SortedProbVec sorted_from_envelope(std::vector<double> entries);
  explicit SortedProbVec(std::vector<double> e) : entries_(std::move(e)) {}
  std::vector<double> entries_;
};

/// Prefix sums of the sorted distribution.
struct LorenzProfile {
  std::vector<double> partial_sums;
};

SortedProbVec sort_desc(const ProbVec& p);

/// Builds a SortedProbVec from an already nonincreasing, normalized vector.
/// Throws if the ordering or normalization does not hold.
SortedProbVec sorted_from_envelope(std::vector<double> entries);

LorenzProfile lorenz(const ProbVec& p);

/// p ≻ q: every prefix sum of p↓ dominates that of q↓ (within kProbTol).
bool majorizes(const ProbVec& p, const ProbVec& q);

/// Returns (e, u): the point mass on the first outcome and the uniform distribution.
std::pair<ProbVec, ProbVec> extreme_vectors(std::size_t d);

/// Total-variation distance ½ Σ |p_i − q_i|.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Nonincreasing copy of an arbitrary real vector.
std::vector<double> sorted_desc(std::span<const double> v);

}  // namespace ucr
