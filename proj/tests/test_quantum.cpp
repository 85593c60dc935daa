#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "ucr/error.hpp"
#include "ucr/quantum.hpp"

using namespace ucr;

namespace {

constexpr double kPi = std::numbers::pi;
const double kS = std::sqrt(0.5);

Basis hadamard() { return Basis::validate({CVector{{kS, kS}}, CVector{{kS, -kS}}}); }

double j2_of(const PureState& psi, const Basis& A, const Basis& B) {
  return eval_joint(JointMeasureDescriptor::j2(), {outcome_dist(psi, projective_povm(A)), outcome_dist(psi, projective_povm(B))});
}

}  // namespace

TEST_CASE("type validation") {
  CHECK_THROWS_AS(PureState::validate(CVector{{1.0, 1.0}}), Error);
  CHECK_NOTHROW(PureState::validate(CVector{{std::complex<double>(0, 1), 0.0}}));
  CHECK_THROWS_AS(Basis::validate({CVector{{1.0, 0.0}}, CVector{{0.6, 0.8}}}), Error);
  CMatrix rho(2, 2);
  rho << 0.5, 0.0, 0.0, 0.6;
  CHECK_THROWS_AS(DensityMatrix::validate(rho), Error);
  rho << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix::validate(rho), Error);
  CMatrix half = CMatrix::Identity(2, 2) * 0.5;
  CHECK_NOTHROW(Povm::validate({half, half}));
  CHECK_THROWS_AS(Povm::validate({half}), Error);
}

TEST_CASE("outcome distribution fixtures") {
  const Povm Z = projective_povm(Basis::computational(2));
  CHECK(outcome_dist(PureState::validate(CVector{{1.0, 0.0}}), Z).vec() == std::vector<double>{1, 0});
  const auto mixed = DensityMatrix::validate(CMatrix::Identity(2, 2) * 0.5);
  CHECK(outcome_dist(mixed, Z).vec() == std::vector<double>{0.5, 0.5});
  CHECK(outcome_dist(mixed, projective_povm(hadamard()))[0] == doctest::Approx(0.5));

  Rng rng = make_rng(1);
  for (int t = 0; t < 200; ++t) {
    const double a = kPi / 2 * uniform01(rng), f = 2 * kPi * uniform01(rng);
    const Basis B = random_basis(rng, 2);
    const auto q = outcome_dist(qubit_state(a, f, B), projective_povm(B));
    CHECK(q[0] == doctest::Approx(std::cos(a) * std::cos(a)).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(std::sin(a) * std::sin(a)).epsilon(1e-12));
  }
}

TEST_CASE("projective POVM fixtures") {
  const Povm Z = projective_povm(Basis::computational(2));
  CMatrix e0 = CMatrix::Zero(2, 2), e1 = CMatrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e1(1, 1) = 1.0;
  CHECK((Z.effects()[0] - e0).norm() == 0.0);
  CHECK((Z.effects()[1] - e1).norm() == 0.0);
  const Povm H = projective_povm(hadamard());
  for (const auto& e : H.effects())
    CHECK((e.cwiseAbs().array() - 0.5).abs().maxCoeff() < 1e-15);
}

TEST_CASE("overlap eta") {
  CHECK(overlap_eta(hadamard(), hadamard()) == doctest::Approx(1.0));
  CHECK(overlap_eta(Basis::computational(2), hadamard()) == doctest::Approx(kS));
  for (double beta : {0.1, 0.5, 0.9, 1.3})
    CHECK(overlap_eta(Basis::computational(2), rotated_real_basis(beta)) ==
          doctest::Approx(std::max(std::cos(beta), std::sin(beta))));
  CHECK_THROWS_AS(overlap_eta(Basis::computational(2), Basis::computational(3)), Error);
}

TEST_CASE("qubit_state fixtures") {
  const Basis B = hadamard();
  CHECK(qubit_state(0, 0, B).amplitudes().isApprox(B.vectors()[0]));
  const CVector tail = qubit_state(kPi / 2, 1.0, B).amplitudes();
  CHECK(std::abs(B.vectors()[1].dot(tail)) == doctest::Approx(1.0));
  CHECK(qubit_state(kPi / 4, 0, B).amplitudes().isApprox((B.vectors()[0] + B.vectors()[1]) * kS));
  CHECK_THROWS_AS(qubit_state(-0.1, 0, B), Error);
  CHECK_THROWS_AS(qubit_state(0.1, 2 * kPi, B), Error);
}

TEST_CASE("closed-form J2 on two outcomes") {
  CHECK(j2_qubit_closed_form(1, 1) == 0.0);
  CHECK(j2_qubit_closed_form(1, 0.5) == doctest::Approx(0.5));
  CHECK(j2_qubit_closed_form(0.6, 0.4) == doctest::Approx(0.48));
  CHECK(qubit_partition(0.6, 0.7) == QubitPartition::s1);
  CHECK(qubit_partition(0.2, 0.3) == QubitPartition::s1);
  CHECK(qubit_partition(0.6, 0.4) == QubitPartition::s2);
  Rng rng = make_rng(2);
  for (int t = 0; t < 2000; ++t) {
    const double p = uniform01(rng), q = uniform01(rng);
    const std::vector<double> pv{p, 1 - p}, qv{q, 1 - q};
    CHECK(j2_qubit_closed_form(p, q) == doctest::Approx(oracle::j2_by_pairings(pv, qv)).epsilon(1e-13));
  }
}

TEST_CASE("qubit bound formula") {
  CHECK(qubit_j2_bound(hadamard(), hadamard()) == doctest::Approx(0.0));
  CHECK(qubit_j2_bound(Basis::computational(2), hadamard()) == doctest::Approx(0.25));
  for (double beta : {0.0, 0.2, 0.7, 1.1, 1.5})
    CHECK(qubit_j2_bound(Basis::computational(2), rotated_real_basis(beta)) ==
          doctest::Approx(0.5 * std::min(std::pow(std::sin(beta), 2), std::pow(std::cos(beta), 2))));
}

TEST_CASE("aligned chart keeps projectors and realizes the overlaps") {
  Rng rng = make_rng(3);
  for (int t = 0; t < 100; ++t) {
    const Basis A = random_basis(rng, 2), B = random_basis(rng, 2);
    const Basis C = aligned_chart(A, B);
    for (std::size_t i = 0; i < 2; ++i) {
      const CMatrix pb = B.vectors()[i] * B.vectors()[i].adjoint();
      const CMatrix pc = C.vectors()[i] * C.vectors()[i].adjoint();
      CHECK((pb - pc).norm() < 1e-12);
      const std::complex<double> ov = A.vectors()[0].dot(C.vectors()[i]);
      CHECK(std::abs(ov.imag()) < 1e-12);
      CHECK(ov.real() >= -1e-12);
    }
    // p(α, φ) = |cos α cos β + e^{iφ} sin α sin β|².
    const double cb = std::abs(A.vectors()[0].dot(C.vectors()[0]));
    const double sb = std::abs(A.vectors()[0].dot(C.vectors()[1]));
    const double a = kPi / 2 * uniform01(rng), f = 2 * kPi * uniform01(rng);
    const double p = outcome_dist(qubit_state(a, f, C), projective_povm(A))[0];
    CHECK(p == doctest::Approx(std::norm(std::cos(a) * cb + std::polar(std::sin(a) * sb, f))).epsilon(1e-12));
  }
}

TEST_CASE("global phase does not change outcome distributions") {
  Rng rng = make_rng(4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + t % 4;
    const PureState psi = random_pure_state(rng, d);
    const PureState rot = PureState::validate(psi.amplitudes() * std::polar(1.0, 6.0 * uniform01(rng)));
    const Povm M = projective_povm(random_basis(rng, d));
    const auto a = outcome_dist(psi, M), b = outcome_dist(rot, M);
    for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14);
  }
}

TEST_CASE("outcome distributions are valid for random states and POVMs") {
  Rng rng = make_rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 1 + t % 6;
    const Povm M = projective_povm(random_basis(rng, d));
    CHECK_NOTHROW(outcome_dist(random_pure_state(rng, d), M));
    CHECK_NOTHROW(outcome_dist(random_density(rng, d), M));
  }
}

TEST_CASE("qubit minimization matches the closed form") {
  Rng rng = make_rng(6);
  for (int t = 0; t < 10; ++t) {
    const Basis A = random_basis(rng, 2), B = random_basis(rng, 2);
    const auto r = minimize_joint(JointMeasureDescriptor::j2(), A, B);
    CHECK(std::abs(r.value - qubit_j2_bound(A, B)) <= 1e-6);
    CHECK(r.converged);
    CHECK(r.method == "qubit-grid+nelder-mead");
    CHECK(j2_of(r.argmin_state, A, B) == doctest::Approx(r.value));
  }
  const auto same = minimize_joint(JointMeasureDescriptor::j2(), hadamard(), hadamard());
  CHECK(same.value <= 1e-9);
  const double o0 = std::abs(hadamard().vectors()[0].dot(same.argmin_state.amplitudes()));
  const double o1 = std::abs(hadamard().vectors()[1].dot(same.argmin_state.amplitudes()));
  CHECK(std::max(o0, o1) > 1 - 1e-6);
}

TEST_CASE("POVM overload agrees with the basis overload") {
  const Basis A = Basis::computational(2), B = rotated_real_basis(0.4);
  const auto viaBasis = minimize_joint(JointMeasureDescriptor::j2(), A, B);
  const auto viaPovm = minimize_joint(JointMeasureDescriptor::j2(), projective_povm(A), projective_povm(B));
  CHECK(viaPovm.value == doctest::Approx(viaBasis.value).epsilon(1e-9));
}

TEST_CASE("tensor Shannon on unbiased qubit bases against a dense grid") {
  const auto r = minimize_joint(JointMeasureDescriptor::tensor(MeasureDescriptor::shannon()), Basis::computational(2), hadamard());
  const double grid = oracle::qubit_grid_min(kPi / 4, 1201, [](double p, double q) {
    return oracle::shannon_bits({p, 1 - p}) + oracle::shannon_bits({q, 1 - q});
  });
  CHECK(r.value > 0.0);
  CHECK(std::abs(r.value - grid) <= 1e-4);
  CHECK(r.value <= grid + 1e-12);
}

TEST_CASE("partition minima") {
  for (int i = 0; i < 6; ++i) {
    const double beta = (i + 0.5) * kPi / 12;
    const Basis A = Basis::computational(2), B = rotated_real_basis(beta);
    const auto s1 = minimize_qubit_partition(A, B, QubitPartition::s1);
    const auto s2 = minimize_qubit_partition(A, B, QubitPartition::s2);
    CHECK(std::abs(s1.value - 0.5 * std::pow(std::sin(beta), 2)) <= 1e-6);
    CHECK(std::abs(s2.value - 0.5 * std::pow(std::cos(beta), 2)) <= 1e-6);
  }
}

TEST_CASE("phi enters only through sin^2(phi/2)") {
  Rng rng = make_rng(7);
  int fitted = 0;
  while (fitted < 5) {
    const Basis A = random_basis(rng, 2), B = random_basis(rng, 2);
    const Basis C = aligned_chart(A, B);
    const double alpha = kPi / 2 * uniform01(rng);
    std::vector<double> s, y;
    std::vector<QubitPartition> parts;
    for (int j = 0; j < 64; ++j) {
      const double f = 2 * kPi * j / 64;
      const PureState psi = qubit_state(alpha, f, C);
      const double p = outcome_dist(psi, projective_povm(A))[0], q = outcome_dist(psi, projective_povm(B))[0];
      parts.push_back(qubit_partition(p, q));
      s.push_back(std::pow(std::sin(f / 2), 2));
      y.push_back(j2_of(psi, A, B));
    }
    if (std::adjacent_find(parts.begin(), parts.end(), std::not_equal_to<>()) != parts.end()) continue;
    Eigen::MatrixXd X(64, 2);
    Eigen::VectorXd Y(64);
    for (int j = 0; j < 64; ++j) {
      X(j, 0) = 1.0;
      X(j, 1) = s[j];
      Y(j) = y[j];
    }
    const Eigen::VectorXd coef = X.colPivHouseholderQr().solve(Y);
    CHECK((X * coef - Y).cwiseAbs().maxCoeff() <= 1e-9);
    ++fitted;
  }
}

TEST_CASE("mixed states never beat the pure-state qubit minimum") {
  Rng rng = make_rng(8);
  const Basis A = Basis::computational(2), B = rotated_real_basis(0.6);
  const double bound = qubit_j2_bound(A, B);
  for (int t = 0; t < 5000; ++t) {
    const DensityMatrix rho = random_density(rng, 2);
    const double v = eval_joint(JointMeasureDescriptor::j2(), {outcome_dist(rho, projective_povm(A)), outcome_dist(rho, projective_povm(B))});
    CHECK(v >= bound - 1e-12);
  }
}

TEST_CASE("higher-dimensional minimization") {
  const MinimizeOptions opts{.restarts = 8, .seed = 3};
  const Basis A = Basis::computational(3);
  // Shared basis: some state is certain for both.
  const auto same = minimize_joint(JointMeasureDescriptor::j2(), A, A, opts);
  CHECK(same.value <= 1e-8);
  CHECK(same.method == "multistart-nelder-mead");
  // Fourier basis is unbiased to the computational one: no state is certain for both.
  std::vector<CVector> f;
  for (int k = 0; k < 3; ++k) {
    CVector v(3);
    for (int j = 0; j < 3; ++j) v(j) = std::polar(1.0 / std::sqrt(3.0), 2 * kPi * j * k / 3);
    f.push_back(v);
  }
  const Basis F = Basis::validate(f);
  const auto r = minimize_joint(JointMeasureDescriptor::j2(), A, F, opts);
  CHECK(r.value > 0.1);
  Rng rng = make_rng(9);
  for (int t = 0; t < 2000; ++t) CHECK(j2_of(random_pure_state(rng, 3), A, F) >= r.value - 1e-9);
  const auto again = minimize_joint(JointMeasureDescriptor::j2(), A, F, opts);
  CHECK(again.value == r.value);
  CHECK(again.argmin_chart == r.argmin_chart);
}
