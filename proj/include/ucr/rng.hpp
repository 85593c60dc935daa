#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ucr {

/// Every randomized routine draws from this engine; output is reproducible
/// for a given (seed, parameters) on one build.
using Rng = std::mt19937_64;

/// Derives an independent stream for sub-task `index` of a seeded job.
inline Rng make_rng(std::uint64_t seed, std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Flat Dirichlet sample (uniform on the simplex) of length n.
std::vector<double> dirichlet_uniform(Rng& rng, std::size_t n);

/// Uniformly random permutation of {0..n-1} as an image list.
std::vector<int> random_permutation(Rng& rng, std::size_t n);

/// Inverse-CDF sampler over a fixed weight vector.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(std::span<const double> weights);
  std::size_t operator()(Rng& rng) const;

 private:
  std::vector<double> cumulative_;
};

}  // namespace ucr
