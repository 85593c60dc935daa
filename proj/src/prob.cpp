#include "ucr/prob.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "ucr/error.hpp"

namespace ucr {

ProbVec ProbVec::validate(std::span<const double> raw, bool normalize) {
  if (raw.empty()) throw Error(Errc::bad_parameter, "distribution must be nonempty");
  std::vector<double> e(raw.begin(), raw.end());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!std::isfinite(e[i])) throw Error(Errc::bad_parameter, "non-finite entry at index " + std::to_string(i));
    if (e[i] < -kProbTol) throw Error(Errc::negative_entry, "entry " + std::to_string(i) + " = " + std::to_string(e[i]));
  }
  if (normalize) {
    double sum = 0.0;
    for (double x : e) sum += std::max(x, 0.0);
    if (sum <= 1e-12) throw Error(Errc::degenerate_sum, "sum " + std::to_string(sum) + " too small to normalize");
    for (double& x : e) x = std::max(x, 0.0) / sum;
  } else {
    if (std::any_of(e.begin(), e.end(), [](double x) { return x > 1.0 + kProbTol; }))
      throw Error(Errc::not_normalized, "entry exceeds 1");
    const double sum = std::accumulate(e.begin(), e.end(), 0.0);
    if (std::abs(sum - 1.0) > kProbTol) throw Error(Errc::not_normalized, "sum = " + std::to_string(sum));
  }
  for (double& x : e) x = std::clamp(x, 0.0, 1.0);
  return ProbVec(std::move(e));
}

SortedProbVec sort_desc(const ProbVec& p) {
  std::vector<double> e = p.vec();
  std::stable_sort(e.begin(), e.end(), std::greater<>());
  return SortedProbVec(std::move(e));
}

SortedProbVec sorted_from_envelope(std::vector<double> entries) {
  const ProbVec checked = ProbVec::validate(entries);
  for (std::size_t i = 0; i + 1 < entries.size(); ++i)
    if (checked[i] < checked[i + 1]) throw Error(Errc::bad_parameter, "entries are not nonincreasing");
  return SortedProbVec(checked.vec());
}

std::vector<double> sorted_desc(std::span<const double> v) {
  std::vector<double> e(v.begin(), v.end());
  std::stable_sort(e.begin(), e.end(), std::greater<>());
  return e;
}

LorenzProfile lorenz(const ProbVec& p) {
  const SortedProbVec s = sort_desc(p);
  LorenzProfile out;
  out.partial_sums.resize(s.dim());
  std::partial_sum(s.vec().begin(), s.vec().end(), out.partial_sums.begin());
  return out;
}

bool majorizes(const ProbVec& p, const ProbVec& q) {
  if (p.dim() != q.dim())
    throw Error(Errc::dimension_mismatch, std::to_string(p.dim()) + " vs " + std::to_string(q.dim()));
  const LorenzProfile lp = lorenz(p);
  const LorenzProfile lq = lorenz(q);
  for (std::size_t k = 0; k < lp.partial_sums.size(); ++k)
    if (lp.partial_sums[k] < lq.partial_sums[k] - kProbTol) return false;
  return true;
}

std::pair<ProbVec, ProbVec> extreme_vectors(std::size_t d) {
  if (d == 0) throw Error(Errc::bad_parameter, "dimension must be positive");
  std::vector<double> e(d, 0.0);
  e[0] = 1.0;
  std::vector<double> u(d, 1.0 / static_cast<double>(d));
  return {ProbVec::validate(e), ProbVec::validate(u)};
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(Errc::dimension_mismatch, "total variation operands differ in length");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
  return 0.5 * acc;
}

}  // namespace ucr
