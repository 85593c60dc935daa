#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ucr/prob.hpp"
#include "ucr/rng.hpp"

namespace ucr {

/// Column-stochastic matrix; entry (y, x) is the probability of output y given input x.
class StochasticChannel {
 public:
  static StochasticChannel validate(const Eigen::MatrixXd& m);

  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  std::size_t inputs() const noexcept { return static_cast<std::size_t>(m_.cols()); }
  std::size_t outputs() const noexcept { return static_cast<std::size_t>(m_.rows()); }

 private:
  explicit StochasticChannel(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

/// Square matrix with nonnegative entries and unit row and column sums.
class DoublyStochMatrix {
 public:
  static DoublyStochMatrix validate(const Eigen::MatrixXd& m);

  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

  /// D p, revalidated as a distribution.
  ProbVec apply(const ProbVec& p) const;

 private:
  explicit DoublyStochMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

bool is_doubly_stochastic(const Eigen::MatrixXd& m, double tol);

/// A permutation g of {0..d-1} stored as its image list: g maps i to perm[i].
using Permutation = std::vector<int>;

/// Permutation matrix with entry (g(i), i) = 1.
Eigen::MatrixXd permutation_matrix(const Permutation& g);
Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation identity_permutation(std::size_t d);
void check_permutation(const Permutation& g, std::size_t d);

inline constexpr std::size_t kDefaultGroupCap = 40320;

/// Finite permutation group. Elements are listed in breadth-first discovery
/// order from the identity, so weight vectors index them deterministically.
class PermGroup {
 public:
  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

 private:
  friend PermGroup generate_group(std::size_t degree, const std::vector<Permutation>& generators, std::size_t cap);
  std::size_t degree_ = 0;
  std::vector<Permutation> elements_;
  std::vector<Permutation> generators_;
};

/// Closure of the generators under composition. Throws GroupTooLarge past `cap`.
PermGroup generate_group(std::size_t degree, const std::vector<Permutation>& generators,
                         std::size_t cap = kDefaultGroupCap);

PermGroup cyclic_group(std::size_t d);
PermGroup symmetric_group(std::size_t d, std::size_t cap = kDefaultGroupCap);

/// Bayesian recovery map R_{x|y} = T_{y|x} / Σ_x' T_{y|x'}; an output that
/// no input can produce maps to the uniform guess 1/d_in.
StochasticChannel recovery_matrix(const StochasticChannel& T);

/// D^rec = R T.
DoublyStochMatrix rec_map(const StochasticChannel& T);

/// D^sym = Σ_g t_g M^(g).
DoublyStochMatrix sym_map(const PermGroup& G, const ProbVec& t);

/// Convex combination of m uniformly drawn permutation matrices with flat
/// Dirichlet weights.
DoublyStochMatrix random_birkhoff(std::size_t d, std::size_t m, std::uint64_t seed);

/// Random column-stochastic channel. Roughly one in four draws has a zero row.
StochasticChannel random_channel(std::size_t d_out, std::size_t d_in, Rng& rng);

/// Exists doubly stochastic D with D p = q (LP feasibility).
bool ds_exists(const ProbVec& p, const ProbVec& q);

/// Exists a probability vector t over G with Σ_g t_g M^(g) = D (LP feasibility).
bool in_sym_hull(const DoublyStochMatrix& D, const PermGroup& G);

/// Entrywise symmetry to 1e-12; necessary for membership in the rec class.
bool is_symmetric_ds(const DoublyStochMatrix& D);

struct EmpiricalDist {
  std::vector<std::uint64_t> counts;
  std::uint64_t n = 0;

  std::vector<double> freq() const;
};

/// Samples x ~ p, y ~ T(.|x), x' ~ R(.|y); frequencies estimate D^rec p.
EmpiricalDist simulate_channel_recovery(const ProbVec& p, const StochasticChannel& T, std::uint64_t n,
                                        std::uint64_t seed);

/// Samples g ~ t, x ~ p and records g(x); frequencies estimate sym_map(G, t) p.
EmpiricalDist simulate_random_relabel(const ProbVec& p, const PermGroup& G, const ProbVec& t, std::uint64_t n,
                                      std::uint64_t seed);

}  // namespace ucr
