#include "ucr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "ucr/error.hpp"

namespace ucr {

const char* measure_kind_name(MeasureKind k) noexcept {
  switch (k) {
    case MeasureKind::shannon: return "shannon";
    case MeasureKind::renyi: return "renyi";
    case MeasureKind::tsallis: return "tsallis";
    case MeasureKind::circular_variance: return "circular_variance";
    case MeasureKind::value_variance: return "value_variance";
  }
  return "unknown";
}

void MeasureDescriptor::check() const {
  switch (kind) {
    case MeasureKind::renyi:
      if (!param || std::isnan(*param) || *param < 0.0)
        throw Error(Errc::bad_parameter, "renyi needs an order alpha >= 0");
      break;
    case MeasureKind::tsallis:
      if (!param || !std::isfinite(*param) || *param <= 0.0)
        throw Error(Errc::bad_parameter, "tsallis needs a finite index q > 0");
      break;
    case MeasureKind::value_variance:
      if (values.empty()) throw Error(Errc::bad_parameter, "value_variance needs outcome values");
      break;
    default:
      break;
  }
}

namespace {

double shannon_bits(const ProbVec& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

double power_sum(const ProbVec& p, double a) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s += std::pow(x, a);
  return s;
}

}  // namespace

double evaluate(const MeasureDescriptor& m, const ProbVec& p) {
  m.check();
  switch (m.kind) {
    case MeasureKind::shannon:
      return shannon_bits(p);
    case MeasureKind::renyi: {
      const double a = *m.param;
      if (std::isinf(a)) return -std::log2(*std::max_element(p.begin(), p.end()));
      if (a == 1.0) return shannon_bits(p);
      if (a == 0.0) {
        const auto support = std::count_if(p.begin(), p.end(), [](double x) { return x > 1e-12; });
        return std::log2(static_cast<double>(support));
      }
      return std::log2(power_sum(p, a)) / (1.0 - a);
    }
    case MeasureKind::tsallis: {
      const double q = *m.param;
      if (q == 1.0) return shannon_bits(p) * std::numbers::ln2;
      return (1.0 - power_sum(p, q)) / (q - 1.0);
    }
    case MeasureKind::circular_variance: {
      const double d = static_cast<double>(p.dim());
      std::complex<double> resultant = 0.0;
      for (std::size_t j = 0; j < p.dim(); ++j)
        resultant += p[j] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / d);
      return 1.0 - std::abs(resultant);
    }
    case MeasureKind::value_variance: {
      if (m.values.size() != p.dim())
        throw Error(Errc::dimension_mismatch, "value_variance has " + std::to_string(m.values.size()) +
                                                  " values for a " + std::to_string(p.dim()) + "-outcome variable");
      double mean = 0.0;
      double second = 0.0;
      for (std::size_t i = 0; i < p.dim(); ++i) {
        mean += p[i] * m.values[i];
        second += p[i] * m.values[i] * m.values[i];
      }
      return second - mean * mean;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

ProbVec random_prob(Rng& rng, std::size_t d) {
  const double mode = uniform01(rng);
  std::vector<double> w = dirichlet_uniform(rng, d);
  if (mode < 0.05) {
    std::fill(w.begin(), w.end(), 0.0);
    w[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(d)) % d] = 1.0;
  } else if (mode < 0.25 && d > 1) {
    // Zero out a random subset, keeping at least one entry.
    const std::size_t keep = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(d)) % d;
    for (std::size_t i = 0; i < d; ++i)
      if (i != keep && uniform01(rng) < 0.5) w[i] = 0.0;
  }
  return ProbVec::validate(w, true);
}

namespace {

template <class DrawMatrix>
MonotonicityReport run_monotonicity(const MeasureDescriptor& m, std::size_t d, std::uint64_t trials,
                                    std::uint64_t seed, DrawMatrix&& draw) {
  m.check();
  if (trials == 0) throw Error(Errc::bad_parameter, "trials must be positive");
  Rng rng = make_rng(seed);
  MonotonicityReport report;
  report.trials = trials;
  report.worst_violation = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < trials; ++t) {
    const ProbVec p = random_prob(rng, d);
    const DoublyStochMatrix D = draw(rng, t);
    const double delta = evaluate(m, D.apply(p)) - evaluate(m, p);
    if (delta < report.worst_violation) {
      report.worst_violation = delta;
      if (delta < -kViolationTol) report.witness = MonotonicityReport::Witness{p.vec(), D.matrix()};
    }
    if (delta < -kViolationTol) ++report.violations;
  }
  return report;
}

}  // namespace

MonotonicityReport test_schur_concavity(const MeasureDescriptor& m, std::size_t d, std::uint64_t trials,
                                        std::uint64_t seed) {
  return run_monotonicity(m, d, trials, seed, [d](Rng& rng, std::uint64_t) {
    const auto vertices = 1 + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(2 * d));
    return random_birkhoff(d, vertices, rng());
  });
}

MonotonicityReport test_monotone_under(const MeasureDescriptor& m, const MapSource& src, std::size_t d,
                                       std::uint64_t trials, std::uint64_t seed) {
  if (const auto* sym = std::get_if<source::Sym>(&src)) {
    if (sym->group.degree() != d) throw Error(Errc::dimension_mismatch, "group degree differs from d");
    return run_monotonicity(m, d, trials, seed, [&](Rng& rng, std::uint64_t) {
      return sym_map(sym->group, ProbVec::validate(dirichlet_uniform(rng, sym->group.order())));
    });
  }
  if (std::holds_alternative<source::Rec>(src)) {
    return run_monotonicity(m, d, trials, seed, [d](Rng& rng, std::uint64_t) {
      const auto d_out = 1 + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(d + 2));
      return rec_map(random_channel(d_out, d, rng));
    });
  }
  const auto& list = std::get<source::Explicit>(src).matrices;
  if (list.empty()) throw Error(Errc::empty_list, "explicit source has no matrices");
  for (const auto& D : list)
    if (D.dim() != d) throw Error(Errc::dimension_mismatch, "explicit matrix dimension differs from d");
  return run_monotonicity(m, d, trials, seed,
                          [&](Rng&, std::uint64_t t) { return list[static_cast<std::size_t>(t % list.size())]; });
}

}  // namespace ucr
