#include "ucr/joint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ucr/error.hpp"

namespace ucr {

const char* schur_fn_name(SchurFnKind k) noexcept {
  switch (k) {
    case SchurFnKind::shannon_ext: return "shannon_ext";
    case SchurFnKind::neg_max: return "neg_max";
    case SchurFnKind::sum_smallest: return "sum_smallest";
    case SchurFnKind::neg_sum_largest: return "neg_sum_largest";
  }
  return "unknown";
}

const char* joint_kind_name(JointKind k) noexcept {
  switch (k) {
    case JointKind::tensor: return "tensor";
    case JointKind::directsum: return "directsum";
    case JointKind::j2: return "j2";
    case JointKind::schur_of_sorted_product: return "schur_of_sorted_product";
    case JointKind::schur_of_topk_sums: return "schur_of_topk_sums";
    case JointKind::renyi_sum: return "renyi_sum";
  }
  return "unknown";
}

double SchurFunction::operator()(std::span<const double> x) const {
  switch (kind) {
    case SchurFnKind::shannon_ext: {
      double h = 0.0;
      for (double v : x)
        if (v > 0.0) h -= v * std::log2(v);
      return h;
    }
    case SchurFnKind::neg_max:
      return x.empty() ? 0.0 : -*std::max_element(x.begin(), x.end());
    case SchurFnKind::sum_smallest:
    case SchurFnKind::neg_sum_largest: {
      if (count == 0 || count > x.size())
        throw Error(Errc::bad_parameter, "schur function count " + std::to_string(count) + " outside 1.." +
                                             std::to_string(x.size()));
      const std::vector<double> s = sorted_desc(x);
      if (kind == SchurFnKind::neg_sum_largest)
        return -std::accumulate(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(count), 0.0);
      return std::accumulate(s.end() - static_cast<std::ptrdiff_t>(count), s.end(), 0.0);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void JointMeasureDescriptor::check() const {
  switch (kind) {
    case JointKind::tensor:
      measure.check();
      break;
    case JointKind::directsum:
      measure.check();
      if (!(w > 0.0 && w < 1.0)) throw Error(Errc::bad_parameter, "directsum weight must lie in (0, 1)");
      break;
    case JointKind::schur_of_topk_sums:
      if (k == 0) throw Error(Errc::bad_parameter, "top-k length must be positive");
      break;
    case JointKind::renyi_sum:
      MeasureDescriptor::renyi(alpha).check();
      MeasureDescriptor::renyi(beta).check();
      break;
    default:
      break;
  }
}

ProbVec tensor_product(const ProbVec& p, const ProbVec& q) {
  std::vector<double> out;
  out.reserve(p.dim() * q.dim());
  for (double a : p)
    for (double b : q) out.push_back(a * b);
  return ProbVec::validate(out);
}

ProbVec direct_sum(const ProbVec& p, const ProbVec& q, double w) {
  std::vector<double> out;
  out.reserve(p.dim() + q.dim());
  for (double a : p) out.push_back(w * a);
  for (double b : q) out.push_back((1.0 - w) * b);
  return ProbVec::validate(out);
}

namespace {

// Sorted copies zero-padded to a common length.
std::pair<std::vector<double>, std::vector<double>> padded_sorted(const DistPair& pair) {
  std::vector<double> a = sort_desc(pair.p).vec();
  std::vector<double> b = sort_desc(pair.q).vec();
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  return {std::move(a), std::move(b)};
}

}  // namespace

double eval_joint(const JointMeasureDescriptor& J, const DistPair& pair) {
  J.check();
  switch (J.kind) {
    case JointKind::tensor:
      return evaluate(J.measure, tensor_product(pair.p, pair.q));
    case JointKind::directsum:
      return evaluate(J.measure, direct_sum(pair.p, pair.q, J.w));
    case JointKind::j2: {
      const auto [a, b] = padded_sorted(pair);
      double dot = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
      return 1.0 - dot;
    }
    case JointKind::schur_of_sorted_product: {
      auto [a, b] = padded_sorted(pair);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
      return J.f(a);
    }
    case JointKind::schur_of_topk_sums: {
      const std::size_t limit = std::min(pair.p.dim(), pair.q.dim());
      if (J.k > limit)
        throw Error(Errc::bad_parameter,
                    "top-k length " + std::to_string(J.k) + " exceeds smaller dimension " + std::to_string(limit));
      const std::vector<double> a = sort_desc(pair.p).vec();
      const std::vector<double> b = sort_desc(pair.q).vec();
      std::vector<double> sums(J.k);
      for (std::size_t i = 0; i < J.k; ++i) sums[i] = a[i] + b[i];
      return J.f(sums);
    }
    case JointKind::renyi_sum:
      return evaluate(MeasureDescriptor::renyi(J.alpha), pair.p) + evaluate(MeasureDescriptor::renyi(J.beta), pair.q);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

bool product_order_leq(const DistPair& a, const DistPair& b) {
  if (a.p.dim() != b.p.dim() || a.q.dim() != b.q.dim())
    throw Error(Errc::dimension_mismatch, "product order needs matching component dimensions");
  return majorizes(a.p, b.p) && majorizes(a.q, b.q);
}

namespace {

DoublyStochMatrix draw_mixing(Rng& rng, std::size_t d, bool from_channel) {
  if (from_channel) {
    const auto d_out = 1 + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(d + 2));
    return rec_map(random_channel(d_out, d, rng));
  }
  const auto vertices = 1 + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(2 * d));
  return random_birkhoff(d, vertices, rng());
}

}  // namespace

MonotonicityReport test_joint_monotone(const JointMeasureDescriptor& J, std::size_t d_p, std::size_t d_q,
                                       std::uint64_t trials, std::uint64_t seed) {
  J.check();
  if (trials == 0) throw Error(Errc::bad_parameter, "trials must be positive");
  Rng rng = make_rng(seed);
  MonotonicityReport report;
  report.trials = trials;
  report.worst_violation = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < trials; ++t) {
    const DistPair before{random_prob(rng, d_p), random_prob(rng, d_q)};
    const bool from_channel = (t % 2) == 1;
    const DoublyStochMatrix d1 = draw_mixing(rng, d_p, from_channel);
    // Leave one side untouched now and then: single-sided moves are the
    // sharpest test of the product order.
    const double side = uniform01(rng);
    const DoublyStochMatrix d2 = draw_mixing(rng, d_q, from_channel);
    const DistPair after{side < 0.15 ? before.p : d1.apply(before.p), side > 0.85 ? before.q : d2.apply(before.q)};
    const double delta = eval_joint(J, after) - eval_joint(J, before);
    if (delta < report.worst_violation) {
      report.worst_violation = delta;
      if (delta < -kViolationTol) {
        std::vector<double> both = before.p.vec();
        both.insert(both.end(), before.q.begin(), before.q.end());
        Eigen::MatrixXd blocks = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d_p + d_q),
                                                       static_cast<Eigen::Index>(d_p + d_q));
        blocks.topLeftCorner(static_cast<Eigen::Index>(d_p), static_cast<Eigen::Index>(d_p)) =
            side < 0.15 ? Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d_p), static_cast<Eigen::Index>(d_p))
                        : d1.matrix();
        blocks.bottomRightCorner(static_cast<Eigen::Index>(d_q), static_cast<Eigen::Index>(d_q)) =
            side > 0.85 ? Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d_q), static_cast<Eigen::Index>(d_q))
                        : d2.matrix();
        report.witness = MonotonicityReport::Witness{std::move(both), std::move(blocks)};
      }
    }
    if (delta < -kViolationTol) ++report.violations;
  }
  return report;
}

bool j2_faithful_check(const DistPair& pair) {
  const double j2 = eval_joint(JointMeasureDescriptor::j2(), pair);
  const bool certain = sort_desc(pair.p)[0] >= 1.0 - 1e-9 && sort_desc(pair.q)[0] >= 1.0 - 1e-9;
  return (j2 <= 1e-9) == certain;
}

}  // namespace ucr
