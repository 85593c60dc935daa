#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ucr/measures.hpp"
#include "ucr/prob.hpp"

namespace ucr {

/// Named Schur-concave functions on nonnegative (not necessarily normalized)
/// vectors, used by the sorted-product and top-k-sum joint families.
enum class SchurFnKind {
  shannon_ext,      ///< −Σ x log₂ x
  neg_max,          ///< −max_i x_i
  sum_smallest,     ///< sum of the `count` smallest entries
  neg_sum_largest,  ///< −(sum of the `count` largest entries)
};

struct SchurFunction {
  SchurFnKind kind = SchurFnKind::neg_max;
  std::size_t count = 1;  ///< sum_smallest / neg_sum_largest only

  double operator()(std::span<const double> x) const;

  /// True when f is also nonincreasing in every coordinate. Only then is the
  /// induced joint measure monotone: the sorted products (or sums) of mixed
  /// inputs are weakly submajorized by the originals, and their totals shrink.
  bool nonincreasing() const noexcept {
    return kind == SchurFnKind::neg_max || kind == SchurFnKind::neg_sum_largest;
  }
};

const char* schur_fn_name(SchurFnKind k) noexcept;

enum class JointKind { tensor, directsum, j2, schur_of_sorted_product, schur_of_topk_sums, renyi_sum };

const char* joint_kind_name(JointKind k) noexcept;

struct JointMeasureDescriptor {
  JointKind kind = JointKind::j2;
  MeasureDescriptor measure;  ///< U for tensor / directsum
  double w = 0.5;             ///< directsum weight on the first variable
  SchurFunction f;            ///< schur_* families
  std::size_t k = 1;          ///< schur_of_topk_sums prefix length
  double alpha = 1.0;         ///< renyi_sum order on p
  double beta = 1.0;          ///< renyi_sum order on q

  static JointMeasureDescriptor j2() { return {}; }
  static JointMeasureDescriptor tensor(MeasureDescriptor u) {
    JointMeasureDescriptor j;
    j.kind = JointKind::tensor;
    j.measure = std::move(u);
    return j;
  }
  static JointMeasureDescriptor directsum(MeasureDescriptor u, double w = 0.5) {
    JointMeasureDescriptor j;
    j.kind = JointKind::directsum;
    j.measure = std::move(u);
    j.w = w;
    return j;
  }
  static JointMeasureDescriptor sorted_product(SchurFunction f) {
    JointMeasureDescriptor j;
    j.kind = JointKind::schur_of_sorted_product;
    j.f = f;
    return j;
  }
  static JointMeasureDescriptor topk_sums(SchurFunction f, std::size_t k) {
    JointMeasureDescriptor j;
    j.kind = JointKind::schur_of_topk_sums;
    j.f = f;
    j.k = k;
    return j;
  }
  static JointMeasureDescriptor renyi_sum(double alpha, double beta) {
    JointMeasureDescriptor j;
    j.kind = JointKind::renyi_sum;
    j.alpha = alpha;
    j.beta = beta;
    return j;
  }

  void check() const;
};

struct DistPair {
  ProbVec p;
  ProbVec q;
};

/// p ⊗ q in row-major order (index i·|q| + j).
ProbVec tensor_product(const ProbVec& p, const ProbVec& q);
/// w·p ⊕ (1−w)·q.
ProbVec direct_sum(const ProbVec& p, const ProbVec& q, double w);

double eval_joint(const JointMeasureDescriptor& J, const DistPair& pair);

/// a ≻⊗ b: a.p ≻ b.p and a.q ≻ b.q.
bool product_order_leq(const DistPair& a, const DistPair& b);

/// Samples random pairs and independent doubly stochastic (D₁, D₂), drawn
/// alternately from random_birkhoff and rec_map of random channels, and
/// counts J(D₁p, D₂q) < J(p, q) − 1e-9.
MonotonicityReport test_joint_monotone(const JointMeasureDescriptor& J, std::size_t d_p, std::size_t d_q,
                                       std::uint64_t trials, std::uint64_t seed);

/// (J₂ ≤ 1e-9) ⟺ (both distributions certain).
bool j2_faithful_check(const DistPair& pair);

}  // namespace ucr
