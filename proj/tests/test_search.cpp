#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ucr/quantum.hpp"
#include "ucr/search.hpp"

using namespace ucr;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("qubit chart round trip") {
  Rng rng = make_rng(1);
  for (int t = 0; t < 500; ++t) {
    const CMatrix chart = random_basis(rng, 2).as_columns();
    const double a = 0.01 + (kPi / 2 - 0.02) * uniform01(rng), f = 2 * kPi * uniform01(rng);
    const CVector psi = search::qubit_chart_state(a, f, chart) * std::polar(1.0, 2.0 * uniform01(rng));
    const auto c = search::qubit_chart_coords(psi, chart);
    CHECK(c[0] == doctest::Approx(a).epsilon(1e-12));
    const double dphi = std::remainder(c[1] - f, 2 * kPi);
    CHECK(std::abs(dphi) < 1e-9);
  }
}

TEST_CASE("hyperspherical chart gives unit vectors and covers the basis states") {
  Rng rng = make_rng(2);
  for (std::size_t d = 2; d <= 6; ++d) {
    const CMatrix chart = random_basis(rng, d).as_columns();
    for (int t = 0; t < 50; ++t) {
      std::vector<double> angles(2 * d - 2);
      for (double& x : angles) x = 7 * uniform01(rng);
      CHECK(search::sphere_chart_state(angles, chart).norm() == doctest::Approx(1.0).epsilon(1e-13));
    }
    std::vector<double> zero(2 * d - 2, 0.0);
    CHECK((search::sphere_chart_state(zero, chart) - chart.col(0)).norm() < 1e-14);
  }
}

TEST_CASE("batched and pointwise grids agree") {
  const Povm A = projective_povm(Basis::computational(2));
  const Povm B = projective_povm(rotated_real_basis(0.3));
  const CMatrix chart = CMatrix::Identity(2, 2);
  const auto pts = kernels::qubit_grid(19, 36);
  const auto ta = search::qubit_outcome_table(A, chart, pts);
  const auto tb = search::qubit_outcome_table(B, chart, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const PureState psi = PureState::validate(search::qubit_chart_state(pts.alpha[i], pts.phi[i], chart));
    CHECK(ta[0][i] == doctest::Approx(outcome_dist(psi, A)[0]).epsilon(1e-13));
    CHECK(tb[1][i] == doctest::Approx(outcome_dist(psi, B)[1]).epsilon(1e-13));
  }
}

TEST_CASE("minimize is deterministic") {
  const search::StateObjective f = [](const CVector& v) { return std::norm(v(0) - v(2)) + std::abs(v(1)); };
  MinimizeOptions opts;
  opts.restarts = 4;
  opts.seed = 17;
  const CMatrix chart = CMatrix::Identity(3, 3);
  const auto a = search::minimize(3, f, opts, chart);
  const auto b = search::minimize(3, f, opts, chart);
  CHECK(a.value == b.value);
  CHECK(a.chart_point == b.chart_point);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("trivial dimension") {
  const search::StateObjective f = [](const CVector& v) { return std::abs(v(0)); };
  const auto r = search::minimize(1, f, MinimizeOptions{}, CMatrix::Identity(1, 1));
  CHECK(r.value == 1.0);
  CHECK(r.method == "trivial");
}
