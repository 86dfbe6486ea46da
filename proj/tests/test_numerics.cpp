#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "cavent/errors.hpp"
#include "cavent/model.hpp"
#include "cavent/numerics.hpp"
#include "test_support.hpp"

using namespace cavent;
using namespace cavent::numerics;
using cavent::testing::random_matrix;
using cavent::testing::random_stable;

namespace {
double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("mat_exp at zero time is the identity exactly") {
  std::mt19937 rng(1);
  const Eigen::MatrixXd a = random_matrix(rng, 5, 5);
  const Eigen::MatrixXd e = mat_exp(a, 0.0);
  CHECK(e == Eigen::MatrixXd::Identity(5, 5));
}

TEST_CASE("mat_exp of a diagonal matrix") {
  Eigen::MatrixXd a = Eigen::Vector2d(-1.0, -2.0).asDiagonal();
  const Eigen::MatrixXd e = mat_exp(a, 1.0);
  CHECK(e(0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(e(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(e(0, 1) == 0.0);
  CHECK(e(1, 0) == 0.0);
}

TEST_CASE("mat_exp matches a 60-term Taylor series on a random stable matrix") {
  std::mt19937 rng(7);
  const Eigen::MatrixXd a = random_stable(rng, 6);
  const Eigen::MatrixXd oracle = cavent::testing::taylor_exp(a, 0.3, 60);
  const Eigen::MatrixXd e = mat_exp(a, 0.3);
  CHECK(max_abs(e - oracle) <= 1e-10 * max_abs(oracle));
}

TEST_CASE("mat_exp across the Pade degree ladder and with squaring") {
  std::mt19937 rng(11);
  const Eigen::MatrixXd a = random_matrix(rng, 4, 4);
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  // Norms below, between and above every degree threshold, including squaring.
  for (double target : {1e-3, 0.1, 0.5, 1.5, 4.0, 20.0}) {
    const double t = target / norm1;
    const Eigen::MatrixXd oracle = cavent::testing::taylor_exp(a, t / 64.0, 40);
    Eigen::MatrixXd squared = oracle;
    for (int i = 0; i < 6; ++i) squared = squared * squared;
    const Eigen::MatrixXd e = mat_exp(a, t);
    CHECK(max_abs(e - squared) <= 1e-11 * std::max(1.0, max_abs(squared)));
  }
}

TEST_CASE("mat_exp rejects bad input") {
  CHECK_THROWS_AS(mat_exp(Eigen::MatrixXd(2, 3), 1.0), DimensionError);
  Eigen::MatrixXd nan = Eigen::MatrixXd::Zero(2, 2);
  nan(0, 1) = NAN;
  CHECK_THROWS_AS(mat_exp(nan, 1.0), NumericalError);
}

TEST_CASE("mat_exp semigroup and inverse on random stable 8x8 matrices") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd a = random_stable(rng, 8);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    const double t1 = u(rng), t2 = u(rng);
    const Eigen::MatrixXd lhs = mat_exp(a, t1) * mat_exp(a, t2);
    const Eigen::MatrixXd rhs = mat_exp(a, t1 + t2);
    CHECK(max_abs(lhs - rhs) <= 1e-9 * max_abs(rhs));
    const Eigen::MatrixXd id = mat_exp(a, t1) * mat_exp(a, -t1);
    CHECK(max_abs(id - Eigen::MatrixXd::Identity(8, 8)) <= 1e-9);
  }
}

TEST_CASE("eigenvalues of simple matrices") {
  Eigen::Matrix2d rot;
  rot << 0, 1.7, -1.7, 0;
  const auto spec = eigenvalues(rot);
  REQUIRE(spec.size() == 2);
  CHECK(std::abs(spec(0).real()) < 1e-14);
  CHECK(std::abs(std::abs(spec(0).imag()) - 1.7) < 1e-14);
  CHECK(std::abs(spec(0) - std::conj(spec(1))) < 1e-14);

  const auto ones = eigenvalues(Eigen::MatrixXd::Identity(5, 5));
  for (const auto& z : ones) CHECK(std::abs(z - 1.0) < 1e-15);

  CHECK_THROWS_AS(eigenvalues(Eigen::MatrixXd(3, 2)), DimensionError);
}

TEST_CASE("eigenvalues: trace, determinant and conjugate pairing") {
  std::mt19937 rng(5);
  for (int n = 2; n <= 6; ++n) {
    const Eigen::MatrixXd a = random_matrix(rng, n, n);
    const auto spec = eigenvalues(a);
    CHECK(spec.size() == n);
    const std::complex<double> sum = spec.sum();
    const std::complex<double> prod = spec.prod();
    const double tr = a.trace(), det = a.determinant();
    CHECK(std::abs(sum - tr) <= 1e-9 * std::max(1.0, std::abs(tr)));
    CHECK(std::abs(prod - det) <= 1e-8 * std::max(1.0, std::abs(det)));
    for (const auto& z : spec) {
      double nearest = INFINITY;
      for (const auto& w : spec) nearest = std::min(nearest, std::abs(std::conj(z) - w));
      CHECK(nearest < 1e-9);
    }
  }
}

TEST_CASE("reference drift matrix is strictly stable, cross-checked by decay of exp(Kt)") {
  const SystemModel model = build_system(reference_config());
  CHECK(spectral_abscissa(model.drift) < 0.0);
  CHECK(max_abs(mat_exp(model.drift, 5000.0)) < 1e-10);
}

TEST_CASE("solve_linear") {
  const Eigen::VectorXd b = Eigen::Vector3d(1, -2, 3);
  CHECK(solve_linear(Eigen::MatrixXd::Identity(3, 3), b) == b);

  Eigen::MatrixXd d = Eigen::Vector2d(2, 4).asDiagonal();
  const Eigen::VectorXd x = solve_linear(d, Eigen::Vector2d(2, 8));
  CHECK(x(0) == doctest::Approx(1.0));
  CHECK(x(1) == doctest::Approx(2.0));

  std::mt19937 rng(9);
  const Eigen::MatrixXd a =
      random_matrix(rng, 12, 12) + 6.0 * Eigen::MatrixXd::Identity(12, 12);
  const Eigen::VectorXd rhs = random_matrix(rng, 12, 1);
  const Eigen::VectorXd oracle = cavent::testing::eliminate(a, rhs);
  const Eigen::VectorXd sol = solve_linear(a, rhs);
  CHECK((sol - oracle).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((a * sol - rhs).norm() <= 1e-10 * rhs.norm());
}

TEST_CASE("solve_linear reports singular systems with a condition estimate") {
  Eigen::Matrix2d s;
  s << 1, 2, 2, 4;
  try {
    (void)solve_linear(s, Eigen::Vector2d(1, 1));
    FAIL("expected SingularError");
  } catch (const SingularError& e) {
    CHECK(std::string(e.what()).find("condition") != std::string::npos);
  }
}

TEST_CASE("solve_lyapunov closed forms") {
  const double kappa = 0.3;
  const Eigen::MatrixXd k = -kappa * Eigen::MatrixXd::Identity(3, 3);
  const Eigen::MatrixXd d = Eigen::Vector3d(0.1, 0.2, 0.7).asDiagonal();
  const Eigen::MatrixXd v = solve_lyapunov(k, -d);
  CHECK(max_abs(v - d / (2 * kappa)) < 1e-14);

  Eigen::Matrix2d rot;
  rot << -kappa, 2.0, -2.0, -kappa;
  const Eigen::MatrixXd vac = solve_lyapunov(rot, -kappa * Eigen::Matrix2d::Identity());
  CHECK(max_abs(vac - 0.5 * Eigen::Matrix2d::Identity()) < 1e-14);
}

TEST_CASE("solve_lyapunov residual and symmetry on random stable systems") {
  std::mt19937 rng(13);
  for (int n : {2, 5, 9, 14}) {
    const Eigen::MatrixXd k = random_stable(rng, n);
    Eigen::MatrixXd r = random_matrix(rng, n, n);
    r = (r + r.transpose()).eval();
    const Eigen::MatrixXd v = solve_lyapunov(k, r);
    CHECK(max_abs(k * v + v * k.transpose() - r) <= 1e-9 * max_abs(r));
    CHECK(v == v.transpose());
  }
}

TEST_CASE("solve_lyapunov rejects eigenvalue pairs summing to zero") {
  Eigen::Matrix2d rot;
  rot << 0, 1, -1, 0;
  CHECK_THROWS_AS(solve_lyapunov(rot, Eigen::Matrix2d::Identity()), SingularError);
  CHECK_THROWS_AS(solve_lyapunov(rot, Eigen::Matrix3d::Identity()), DimensionError);
}

TEST_CASE("Lyapunov steady state matches long-time RK4 integration of the reference model") {
  const SystemModel model = build_system(reference_config());
  const Eigen::MatrixXd steady = solve_lyapunov(model.drift, -model.diffusion);
  const Eigen::MatrixXd v0 = 0.5 * Eigen::MatrixXd::Identity(model.dimension(), model.dimension());
  const Eigen::MatrixXd evolved = cavent::testing::integrate_covariance_rk4(
      model.drift, model.diffusion, v0, 2000.0, 40000);
  CHECK(max_abs(evolved - steady) <= 1e-6);
}

TEST_CASE("templates accept other scalar types") {
  Eigen::Matrix2f a;
  a << -1.f, 0.5f, -0.5f, -1.f;
  const Eigen::MatrixXf e = mat_exp(a, 0.5f);
  const Eigen::MatrixXf back = mat_exp(a, -0.5f);
  CHECK(((e * back) - Eigen::Matrix2f::Identity()).cwiseAbs().maxCoeff() < 1e-5f);
}
