#include "ucr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ucr/error.hpp"

namespace ucr {

std::vector<double> dirichlet_uniform(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& x : w) {
    // Exp(1) via inversion; 1 - u lies in (0, 1].
    x = -std::log(1.0 - uniform01(rng));
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

std::vector<int> random_permutation(Rng& rng, std::size_t n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
    std::swap(perm[i - 1], perm[std::min(j, i - 1)]);
  }
  return perm;
}

CategoricalSampler::CategoricalSampler(std::span<const double> weights) : cumulative_(weights.size()) {
  if (weights.empty()) throw Error(Errc::bad_parameter, "categorical sampler needs at least one weight");
  std::partial_sum(weights.begin(), weights.end(), cumulative_.begin());
}

std::size_t CategoricalSampler::operator()(Rng& rng) const {
  const double u = uniform01(rng) * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  return std::min(idx, cumulative_.size() - 1);
}

}  // namespace ucr
