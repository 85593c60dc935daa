#include "ucr/doublystoch.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <string>

#include "ucr/error.hpp"
#include "ucr/lp.hpp"

namespace ucr {

namespace {

void check_entries(const Eigen::MatrixXd& m, const char* what) {
  if (m.size() == 0) throw Error(Errc::bad_parameter, std::string(what) + " must be nonempty");
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double x = m.data()[i];
    if (!std::isfinite(x)) throw Error(Errc::bad_parameter, std::string(what) + " has a non-finite entry");
    if (x < -kProbTol) throw Error(Errc::negative_entry, std::string(what) + " has a negative entry");
    if (x > 1.0 + kProbTol) throw Error(Errc::bad_parameter, std::string(what) + " has an entry above 1");
  }
}

}  // namespace

StochasticChannel StochasticChannel::validate(const Eigen::MatrixXd& m) {
  check_entries(m, "channel");
  for (Eigen::Index x = 0; x < m.cols(); ++x) {
    const double s = m.col(x).sum();
    if (std::abs(s - 1.0) > kProbTol)
      throw Error(Errc::not_normalized, "channel column " + std::to_string(x) + " sums to " + std::to_string(s));
  }
  return StochasticChannel(m.cwiseMax(0.0).cwiseMin(1.0));
}

bool is_doubly_stochastic(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols() || m.size() == 0) return false;
  if ((m.array() < -tol).any() || (m.array() > 1.0 + tol).any()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (std::abs(m.row(i).sum() - 1.0) > tol) return false;
    if (std::abs(m.col(i).sum() - 1.0) > tol) return false;
  }
  return true;
}

DoublyStochMatrix DoublyStochMatrix::validate(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw Error(Errc::dimension_mismatch, "doubly stochastic matrix must be square");
  check_entries(m, "matrix");
  if (!is_doubly_stochastic(m, kProbTol)) throw Error(Errc::not_normalized, "row or column sums differ from 1");
  return DoublyStochMatrix(m.cwiseMax(0.0).cwiseMin(1.0));
}

ProbVec DoublyStochMatrix::apply(const ProbVec& p) const {
  if (p.dim() != dim()) throw Error(Errc::dimension_mismatch, "matrix and distribution dimensions differ");
  const Eigen::VectorXd in = Eigen::Map<const Eigen::VectorXd>(p.vec().data(), static_cast<Eigen::Index>(p.dim()));
  const Eigen::VectorXd out = m_ * in;
  return ProbVec::validate(std::span<const double>(out.data(), static_cast<std::size_t>(out.size())));
}

void check_permutation(const Permutation& g, std::size_t d) {
  if (g.size() != d) throw Error(Errc::dimension_mismatch, "permutation has length " + std::to_string(g.size()));
  std::vector<bool> seen(d, false);
  for (int image : g) {
    if (image < 0 || static_cast<std::size_t>(image) >= d || seen[static_cast<std::size_t>(image)])
      throw Error(Errc::bad_parameter, "not a permutation of 0.." + std::to_string(d - 1));
    seen[static_cast<std::size_t>(image)] = true;
  }
}

Eigen::MatrixXd permutation_matrix(const Permutation& g) {
  const auto d = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(g[static_cast<std::size_t>(i)], i) = 1.0;
  return m;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[static_cast<std::size_t>(inner[i])];
  return out;
}

Permutation identity_permutation(std::size_t d) {
  Permutation id(d);
  std::iota(id.begin(), id.end(), 0);
  return id;
}

PermGroup generate_group(std::size_t degree, const std::vector<Permutation>& generators, std::size_t cap) {
  if (degree == 0) throw Error(Errc::bad_parameter, "group degree must be positive");
  for (const auto& g : generators) check_permutation(g, degree);

  PermGroup group;
  group.degree_ = degree;
  group.generators_ = generators;
  std::map<Permutation, std::size_t> index;
  std::deque<std::size_t> frontier;
  const Permutation id = identity_permutation(degree);
  group.elements_.push_back(id);
  index.emplace(id, 0);
  frontier.push_back(0);
  while (!frontier.empty()) {
    const Permutation current = group.elements_[frontier.front()];
    frontier.pop_front();
    for (const auto& gen : generators) {
      Permutation next = compose(gen, current);
      if (index.contains(next)) continue;
      if (group.elements_.size() >= cap)
        throw Error(Errc::group_too_large, "closure exceeds cap of " + std::to_string(cap) + " elements");
      index.emplace(next, group.elements_.size());
      frontier.push_back(group.elements_.size());
      group.elements_.push_back(std::move(next));
    }
  }
  return group;
}

PermGroup cyclic_group(std::size_t d) {
  Permutation shift(d);
  for (std::size_t i = 0; i < d; ++i) shift[i] = static_cast<int>((i + 1) % d);
  return generate_group(d, {shift});
}

PermGroup symmetric_group(std::size_t d, std::size_t cap) {
  std::vector<Permutation> gens;
  if (d >= 2) {
    Permutation swap01 = identity_permutation(d);
    std::swap(swap01[0], swap01[1]);
    Permutation cycle(d);
    for (std::size_t i = 0; i < d; ++i) cycle[i] = static_cast<int>((i + 1) % d);
    gens = {swap01, cycle};
  }
  return generate_group(d, gens, cap);
}

StochasticChannel recovery_matrix(const StochasticChannel& T) {
  const Eigen::MatrixXd& t = T.matrix();
  const Eigen::Index d_out = t.rows();
  const Eigen::Index d_in = t.cols();
  Eigen::MatrixXd r(d_in, d_out);
  for (Eigen::Index y = 0; y < d_out; ++y) {
    const double s = t.row(y).sum();
    if (s > 0.0) {
      r.col(y) = t.row(y).transpose() / s;
    } else {
      r.col(y).setConstant(1.0 / static_cast<double>(d_in));
    }
  }
  return StochasticChannel::validate(r);
}

DoublyStochMatrix rec_map(const StochasticChannel& T) {
  const StochasticChannel R = recovery_matrix(T);
  return DoublyStochMatrix::validate(R.matrix() * T.matrix());
}

DoublyStochMatrix sym_map(const PermGroup& G, const ProbVec& t) {
  if (t.dim() != G.order())
    throw Error(Errc::dimension_mismatch,
                "weights have length " + std::to_string(t.dim()) + ", group order " + std::to_string(G.order()));
  const auto d = static_cast<Eigen::Index>(G.degree());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t k = 0; k < G.order(); ++k) {
    const Permutation& g = G.elements()[k];
    for (Eigen::Index i = 0; i < d; ++i) m(g[static_cast<std::size_t>(i)], i) += t[k];
  }
  return DoublyStochMatrix::validate(m);
}

DoublyStochMatrix random_birkhoff(std::size_t d, std::size_t m, std::uint64_t seed) {
  if (d == 0 || m == 0) throw Error(Errc::bad_parameter, "random_birkhoff needs d >= 1 and m >= 1");
  Rng rng = make_rng(seed);
  const std::vector<double> w = dirichlet_uniform(rng, m);
  const auto dd = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dd, dd);
  for (std::size_t k = 0; k < m; ++k) {
    const Permutation g = random_permutation(rng, d);
    for (Eigen::Index i = 0; i < dd; ++i) out(g[static_cast<std::size_t>(i)], i) += w[k];
  }
  return DoublyStochMatrix::validate(out);
}

StochasticChannel random_channel(std::size_t d_out, std::size_t d_in, Rng& rng) {
  const auto rows = static_cast<Eigen::Index>(d_out);
  const auto cols = static_cast<Eigen::Index>(d_in);
  Eigen::MatrixXd t(rows, cols);
  const bool with_dead_row = d_out > 1 && uniform01(rng) < 0.25;
  const auto dead = static_cast<Eigen::Index>(uniform01(rng) * static_cast<double>(d_out));
  for (Eigen::Index x = 0; x < cols; ++x) {
    std::vector<double> col = dirichlet_uniform(rng, d_out);
    if (with_dead_row) {
      const double lost = col[static_cast<std::size_t>(dead)];
      col[static_cast<std::size_t>(dead)] = 0.0;
      col[static_cast<std::size_t>((dead + 1) % rows)] += lost;
    }
    for (Eigen::Index y = 0; y < rows; ++y) t(y, x) = col[static_cast<std::size_t>(y)];
  }
  return StochasticChannel::validate(t);
}

bool ds_exists(const ProbVec& p, const ProbVec& q) {
  if (p.dim() != q.dim()) throw Error(Errc::dimension_mismatch, "ds_exists operands differ in dimension");
  const auto d = static_cast<Eigen::Index>(p.dim());
  // Variable D(i, j) sits at column i * d + j.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3 * d, d * d);
  Eigen::VectorXd b(3 * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      a(i, i * d + j) = 1.0;                                // row sums
      a(d + j, i * d + j) = 1.0;                            // column sums
      a(2 * d + i, i * d + j) = p[static_cast<std::size_t>(j)];  // (D p)_i
    }
    b(i) = 1.0;
    b(d + i) = 1.0;
    b(2 * d + i) = q[static_cast<std::size_t>(i)];
  }
  return lp::phase_one(a, b, kProbTol).feasible;
}

bool in_sym_hull(const DoublyStochMatrix& D, const PermGroup& G) {
  if (D.dim() != G.degree()) throw Error(Errc::dimension_mismatch, "matrix dimension differs from group degree");
  const auto d = static_cast<Eigen::Index>(D.dim());
  const auto n = static_cast<Eigen::Index>(G.order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d * d + 1, n);
  Eigen::VectorXd b(d * d + 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Permutation& g = G.elements()[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < d; ++i) a(g[static_cast<std::size_t>(i)] * d + i, k) = 1.0;
    a(d * d, k) = 1.0;
  }
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) b(r * d + c) = D.matrix()(r, c);
  b(d * d) = 1.0;
  return lp::phase_one(a, b, kProbTol).feasible;
}

bool is_symmetric_ds(const DoublyStochMatrix& D) {
  const Eigen::MatrixXd& m = D.matrix();
  return ((m - m.transpose()).cwiseAbs().array() <= 1e-12).all();
}

std::vector<double> EmpiricalDist::freq() const {
  std::vector<double> f(counts.size(), 0.0);
  if (n == 0) return f;
  for (std::size_t i = 0; i < counts.size(); ++i) f[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  return f;
}

EmpiricalDist simulate_channel_recovery(const ProbVec& p, const StochasticChannel& T, std::uint64_t n,
                                        std::uint64_t seed) {
  if (p.dim() != T.inputs()) throw Error(Errc::dimension_mismatch, "distribution and channel input differ");
  if (n == 0) throw Error(Errc::bad_parameter, "sample count must be positive");
  const StochasticChannel R = recovery_matrix(T);
  const CategoricalSampler source(p.entries());
  std::vector<CategoricalSampler> forward;
  std::vector<CategoricalSampler> backward;
  for (Eigen::Index x = 0; x < T.matrix().cols(); ++x)
    forward.emplace_back(std::span<const double>(T.matrix().col(x).data(), T.outputs()));
  for (Eigen::Index y = 0; y < R.matrix().cols(); ++y)
    backward.emplace_back(std::span<const double>(R.matrix().col(y).data(), R.outputs()));

  Rng rng = make_rng(seed);
  EmpiricalDist out{std::vector<std::uint64_t>(p.dim(), 0), n};
  for (std::uint64_t s = 0; s < n; ++s) {
    const std::size_t x = source(rng);
    const std::size_t y = forward[x](rng);
    ++out.counts[backward[y](rng)];
  }
  return out;
}

EmpiricalDist simulate_random_relabel(const ProbVec& p, const PermGroup& G, const ProbVec& t, std::uint64_t n,
                                      std::uint64_t seed) {
  if (t.dim() != G.order()) throw Error(Errc::dimension_mismatch, "weights length differs from group order");
  if (p.dim() != G.degree()) throw Error(Errc::dimension_mismatch, "distribution dimension differs from group degree");
  if (n == 0) throw Error(Errc::bad_parameter, "sample count must be positive");
  const CategoricalSampler pick_g(t.entries());
  const CategoricalSampler pick_x(p.entries());
  Rng rng = make_rng(seed);
  EmpiricalDist out{std::vector<std::uint64_t>(p.dim(), 0), n};
  for (std::uint64_t s = 0; s < n; ++s) {
    const Permutation& g = G.elements()[pick_g(rng)];
    ++out.counts[static_cast<std::size_t>(g[pick_x(rng)])];
  }
  return out;
}

}  // namespace ucr
