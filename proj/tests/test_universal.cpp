#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ucr/error.hpp"
#include "ucr/universal.hpp"

using namespace ucr;

namespace {

const double kS = std::sqrt(0.5);
Povm Z() { return projective_povm(Basis::computational(2)); }
Povm X() { return projective_povm(Basis::validate({CVector{{kS, kS}}, CVector{{kS, -kS}}})); }

Povm trine() {
  std::vector<CMatrix> effects;
  for (int k = 0; k < 3; ++k) {
    const double t = std::numbers::pi * k / 3;
    const CVector v{{std::cos(t), std::sin(t)}};
    effects.push_back(v * v.adjoint() * (2.0 / 3.0));
  }
  return Povm::validate(effects);
}

// Brute-force max over a Bloch-sphere grid of p↓₁q↓₁ for Z against X.
double grid_max_product() {
  double best = 0.0;
  const int n = 801;
  for (int i = 0; i < n; ++i) {
    const double a = std::numbers::pi / 2 * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double f = 2 * std::numbers::pi * j / (n - 1);
      const double p = std::cos(a) * std::cos(a);
      const double q = 0.5 * (1 + 2 * std::cos(a) * std::sin(a) * std::cos(f));
      best = std::max(best, std::max(p, 1 - p) * std::max(q, 1 - q));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("concave envelope") {
  CHECK(upper_concave_envelope({0, 1}) == std::vector<double>{0, 1});
  CHECK(upper_concave_envelope({0, 0.5, 1}) == std::vector<double>{0, 0.5, 1});
  const auto env = upper_concave_envelope({0, 0.3, 0.9, 1});
  CHECK(env[1] == doctest::Approx(0.45));
  CHECK(env[2] == 0.9);
  CHECK(upper_concave_envelope({0, 0.7, 1, 1, 1}) == std::vector<double>{0, 0.7, 1, 1, 1});
}

TEST_CASE("top_k_sum") {
  const std::vector<double> v{0.1, 0.4, 0.2, 0.3};
  CHECK(top_k_sum(v, 1) == 0.4);
  CHECK(top_k_sum(v, 2) == doctest::Approx(0.7));
  CHECK(top_k_sum(v, 9) == doctest::Approx(1.0));
}

TEST_CASE("shared basis gives the certain vector") {
  const auto U = universal_omega(Z(), Z(), Combination::tensor());
  CHECK(U.omega[0] == doctest::Approx(1.0));
  CHECK(U.omega.dim() == 4);
}

TEST_CASE("unbiased qubit bases, tensor type") {
  const auto U = universal_omega(Z(), X(), Combination::tensor());
  const double c = std::cos(std::numbers::pi / 8);
  CHECK(U.omega[0] == doctest::Approx(std::pow(c, 4)).epsilon(1e-9));
  CHECK(std::abs(U.omega[0] - grid_max_product()) <= 1e-5);
  CHECK(U.converged);
  const auto chk = check_universal(U, Z(), X(), 10000, 1);
  CHECK(chk.violations == 0);
  CHECK(chk.worst_margin >= -1e-9);

  // Consequence for Schur-concave functions of the combined distribution.
  Rng rng = make_rng(4);
  const ProbVec omega = U.omega.as_prob();
  for (int t = 0; t < 1000; ++t) {
    const PureState psi = random_pure_state(rng, 2);
    const ProbVec pq = tensor_product(outcome_dist(psi, Z()), outcome_dist(psi, X()));
    CHECK(evaluate(MeasureDescriptor::shannon(), pq) >= evaluate(MeasureDescriptor::shannon(), omega) - 1e-9);
    CHECK(-*std::max_element(pq.begin(), pq.end()) >= -omega[0] - 1e-9);
  }
}

TEST_CASE("partial sums are concave and end at one") {
  for (auto comb : {Combination::tensor(), Combination::directsum(0.5), Combination::directsum(0.3)}) {
    const auto U = universal_omega(Z(), X(), comb);
    double total = 0.0;
    for (std::size_t k = 0; k < U.omega.dim(); ++k) {
      total += U.omega[k];
      if (k > 0) CHECK(U.omega[k] <= U.omega[k - 1]);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(U.max_partial_sums.back() == 1.0);
    CHECK(check_universal(U, Z(), X(), 2000, 2).violations == 0);
  }
}

TEST_CASE("direct-sum first entry against a grid") {
  const auto U = universal_omega(Z(), X(), Combination::directsum(0.5));
  CHECK(U.omega[0] == doctest::Approx(0.5));
  CHECK(U.max_partial_sums[1] == doctest::Approx(0.5 * (1 + kS)).epsilon(1e-9));
}

TEST_CASE("domination fixtures") {
  const auto U = universal_omega(Z(), X(), Combination::tensor());
  UniversalVector certain = U;
  certain.omega = sorted_from_envelope({1, 0, 0, 0});
  CHECK(check_universal(certain, Z(), X(), 1000, 3).violations == 0);
  UniversalVector flat = U;
  flat.omega = sorted_from_envelope({0.25, 0.25, 0.25, 0.25});
  CHECK(check_universal(flat, Z(), X(), 1000, 3).violations > 0);
  CHECK_THROWS_AS(check_universal(U, trine(), X(), 10, 0), Error);
}

TEST_CASE("trivial pair") {
  const auto t = trivial_pair(Z(), X());
  CHECK(t.u0[0] == doctest::Approx(1.0));
  CHECK(t.v0[0] == doctest::Approx(1.0));
  CHECK(eval_joint(JointMeasureDescriptor::j2(), {t.u0.as_prob(), t.v0.as_prob()}) == doctest::Approx(0.0));
  const auto tr = trivial_pair(trine(), trine());
  CHECK(tr.u0[0] < 1.0);
  CHECK(tr.u0[0] == doctest::Approx(2.0 / 3).epsilon(1e-9));

  Rng rng = make_rng(5);
  const auto t3 = trivial_pair(trine(), X());
  for (int s = 0; s < 10000; ++s) {
    const PureState psi = random_pure_state(rng, 2);
    CHECK(majorizes(t3.u0.as_prob(), outcome_dist(psi, trine())));
    CHECK(majorizes(t3.v0.as_prob(), outcome_dist(psi, X())));
  }
}

TEST_CASE("multi-pair bound") {
  auto [e, u] = extreme_vectors(2);
  const auto J = JointMeasureDescriptor::j2();
  CHECK(multi_pair_bound(J, {{e, u}}) == eval_joint(J, {e, u}));
  CHECK(multi_pair_bound(J, {{u, u}, {e, e}}) <= eval_joint(J, {e, e}));
  CHECK(multi_pair_bound(J, {{e, u}, {u, e}}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(multi_pair_bound(J, {}), Error);
}

TEST_CASE("three-dimensional universal vector dominates sampled states") {
  std::vector<CVector> f;
  for (int k = 0; k < 3; ++k) {
    CVector v(3);
    for (int j = 0; j < 3; ++j) v(j) = std::polar(1.0 / std::sqrt(3.0), 2 * std::numbers::pi * j * k / 3);
    f.push_back(v);
  }
  const Povm A = projective_povm(Basis::computational(3));
  const Povm F = projective_povm(Basis::validate(f));
  UniversalOptions opts;
  opts.search.restarts = 8;
  const auto U = universal_omega(A, F, Combination::tensor(), opts);
  CHECK(U.omega[0] < 1.0);
  CHECK(check_universal(U, A, F, 3000, 9).violations == 0);
}
