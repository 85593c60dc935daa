#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ucr/error.hpp"
#include "ucr/kernels.hpp"

namespace ucr::kernels {

void QubitPoints::push_back(double a, double f) {
  const double c = std::cos(a);
  const double s = std::sin(a);
  alpha.push_back(a);
  phi.push_back(f);
  cos2.push_back(c * c);
  sin2.push_back(s * s);
  cross.push_back(c * s);
  cos_phi.push_back(std::cos(f));
  sin_phi.push_back(std::sin(f));
}

QubitPoints qubit_grid(std::size_t n_alpha, std::size_t n_phi) {
  if (n_alpha < 2 || n_phi < 1) throw Error(Errc::bad_parameter, "qubit grid needs n_alpha >= 2 and n_phi >= 1");
  QubitPoints pts;
  const std::size_t n = n_alpha * n_phi;
  for (auto* v : {&pts.alpha, &pts.phi, &pts.cos2, &pts.sin2, &pts.cross, &pts.cos_phi, &pts.sin_phi}) v->reserve(n);
  for (std::size_t i = 0; i < n_alpha; ++i) {
    const double a = (std::numbers::pi / 2.0) * static_cast<double>(i) / static_cast<double>(n_alpha - 1);
    for (std::size_t j = 0; j < n_phi; ++j)
      pts.push_back(a, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi));
  }
  return pts;
}

namespace scalar {

void expectation(const QubitEffect& e, const QubitPoints& pts, std::span<double> out) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double interference = e.off_re * pts.cos_phi[i] - e.off_im * pts.sin_phi[i];
    out[i] = e.d0 * pts.cos2[i] + e.d1 * pts.sin2[i] + 2.0 * pts.cross[i] * interference;
  }
}

void j2_binary(std::span<const double> p, std::span<const double> q, std::span<double> out) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double p_hi = std::max(p[i], 1.0 - p[i]);
    const double p_lo = std::min(p[i], 1.0 - p[i]);
    const double q_hi = std::max(q[i], 1.0 - q[i]);
    const double q_lo = std::min(q[i], 1.0 - q[i]);
    out[i] = 1.0 - (p_hi * q_hi + p_lo * q_lo);
  }
}

std::size_t argmin(std::span<const double> v) {
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  bool found = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::isnan(v[i])) continue;
    if (!found || v[i] < best_value) {
      best = i;
      best_value = v[i];
      found = true;
    }
  }
  return best;
}

}  // namespace scalar
}  // namespace ucr::kernels
