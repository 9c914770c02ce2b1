#include <doctest.h>

#include "nhjc/errors.hpp"
#include "nhjc/numerics.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace nhjc;
using nhjc::test::mat;
using nhjc::test::max_abs_diff;

namespace {

Mat2 random_matrix(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  return mat({d(rng), d(rng)}, {d(rng), d(rng)}, {d(rng), d(rng)}, {d(rng), d(rng)});
}

Mat2 random_hpd(std::mt19937_64& rng) {
  const Mat2 a = random_matrix(rng);
  return a * a.adjoint() + 0.1 * Mat2::Identity();
}

}  // namespace

TEST_CASE("eig2: identity is degenerate but not defective") {
  const auto e = numerics::eig2(Mat2::Identity());
  CHECK(std::abs(e.values[0] - 1.0) == doctest::Approx(0.0));
  CHECK(std::abs(e.values[1] - 1.0) == doctest::Approx(0.0));
  CHECK_FALSE(e.defective);
  CHECK(numerics::column_condition(e.right[0], e.right[1]) == doctest::Approx(1.0));
}

TEST_CASE("eig2: H_1 at the exceptional point is defective") {
  const auto e = numerics::eig2(mat(2.5, 2.0, -2.0, -1.5));
  CHECK(std::abs(e.values[0] - 0.5) < 1e-12);
  CHECK(std::abs(e.values[1] - 0.5) < 1e-12);
  CHECK(e.defective);
}

TEST_CASE("eig2: broken-phase block [[2.5,3],[-3,-1.5]]") {
  // tr = 1, det = -3.75 + 9 = 5.25, disc = 1 - 21 = -20  =>  0.5 +- i sqrt(5)
  const auto e = numerics::eig2(mat(2.5, 3.0, -3.0, -1.5));
  CHECK_FALSE(e.defective);
  const std::array<Complex, 2> expected{Complex(0.5, std::sqrt(5.0)), Complex(0.5, -std::sqrt(5.0))};
  CHECK(test::pair_distance(e.values, expected) < 1e-14);
}

TEST_CASE("eig2: right and left eigenvectors satisfy their equations") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const Mat2 m = random_matrix(rng, 3.0);
    const auto e = numerics::eig2(m);
    REQUIRE_FALSE(e.defective);
    const double scale = m.norm();
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK((m * e.right[i] - e.values[i] * e.right[i]).norm() < 1e-11 * scale);
      CHECK((m.adjoint() * e.left[i] - std::conj(e.values[i]) * e.left[i]).norm() < 1e-11 * scale);
    }
    // V diag(values) V^{-1} = M
    Mat2 v;
    v << e.right[0], e.right[1];
    Mat2 lam = Mat2::Zero();
    lam(0, 0) = e.values[0];
    lam(1, 1) = e.values[1];
    CHECK(max_abs_diff(v * lam * v.inverse(), m) < 1e-10 * std::max(1.0, scale));
    CHECK(test::pair_distance(e.values, test::schur_eigenvalues(m)) < 1e-11 * std::max(1.0, scale));
  }
}

TEST_CASE("eig2: diagonal and triangular inputs") {
  const auto d = numerics::eig2(mat(3.0, 0.0, 0.0, -1.0));
  CHECK_FALSE(d.defective);
  CHECK(test::pair_distance(d.values, {Complex(3.0), Complex(-1.0)}) == 0.0);

  const auto jordan = numerics::eig2(mat(2.0, 1.0, 0.0, 2.0));
  CHECK(jordan.defective);
}

TEST_CASE("sqrt_hpd: known roots") {
  CHECK(max_abs_diff(numerics::sqrt_hpd(Mat2::Identity()), Mat2::Identity()) < 1e-15);
  CHECK(max_abs_diff(numerics::sqrt_hpd(mat(4.0, 0.0, 0.0, 9.0)), mat(2.0, 0.0, 0.0, 3.0)) < 1e-15);

  // Metric at delta = sqrt(2) and its closed-form root.
  const double d = std::sqrt(2.0);
  CHECK(max_abs_diff(numerics::sqrt_hpd(test::closed::G(d)), test::closed::g(d)) < 1e-12);
}

TEST_CASE("sqrt_hpd: squares back and agrees with the closed 2x2 formula") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const Mat2 m = random_hpd(rng);
    const Mat2 r = numerics::sqrt_hpd(m);
    CHECK(numerics::hermiticity_residual(r) < 1e-14);
    CHECK(max_abs_diff(r * r, m) < 1e-10 * std::max(1.0, m.norm()));
    CHECK(max_abs_diff(r, test::sqrt_hpd_closed(m)) < 1e-10 * std::max(1.0, r.norm()));
    CHECK(max_abs_diff(numerics::sqrt_hpd(m * m), m) < 1e-10 * std::max(1.0, m.norm()));
  }
}

TEST_CASE("sqrt_hpd: rejects bad input") {
  CHECK_THROWS_AS(numerics::sqrt_hpd(mat(1.0, 2.0, 0.0, 1.0)), NotHermitian);
  CHECK_THROWS_AS(numerics::sqrt_hpd(mat(1.0, 0.0, 0.0, -1.0)), NotPositiveDefinite);
  CHECK_THROWS_AS(numerics::sqrt_hpd(mat(1.0, 1.0, 1.0, 1.0)), NotPositiveDefinite);
  CHECK_THROWS_AS(numerics::sqrt_hpd(mat(-1.0, 0.0, 0.0, -2.0)), NotPositiveDefinite);
}

TEST_CASE("expm2: zero matrix and Gamma sigma_y") {
  CHECK(max_abs_diff(numerics::expm2(Mat2::Zero(), 3.0), Mat2::Identity()) == 0.0);

  const double gamma = std::sqrt(12.0);
  const double t = 0.1;
  const Mat2 expected =
      std::cosh(gamma * t) * Mat2::Identity() + std::sinh(gamma * t) * numerics::pauli_y();
  CHECK(max_abs_diff(numerics::expm2(gamma * numerics::pauli_y(), t), expected) < 1e-15);
}

TEST_CASE("expm2: matches the Taylor scaling-and-squaring reference") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> time(0.0, 2.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const Mat2 m = random_matrix(rng);
    const double t = time(rng);
    const Mat2 ref = test::taylor_expm(m, t);
    CHECK(max_abs_diff(numerics::expm2(m, t), ref) < 1e-11 * std::max(1.0, ref.norm()));
  }
  // Nilpotent traceless part exercises the series branch.
  const Mat2 nil = mat(1.0, 1.0, 0.0, 1.0);
  CHECK(max_abs_diff(numerics::expm2(nil, 0.7), test::taylor_expm(nil, 0.7)) < 1e-12);
}

TEST_CASE("expm2: group law and determinant identity") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> time(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Mat2 m = random_matrix(rng);
    const double s = time(rng);
    const double t = time(rng);
    // keep ||M|| (s + t) <= 10
    m *= std::min(1.0, 10.0 / (m.norm() * (s + t) + 1e-300));
    const Mat2 lhs = numerics::expm2(m, s + t);
    const Mat2 rhs = numerics::expm2(m, s) * numerics::expm2(m, t);
    CHECK(max_abs_diff(lhs, rhs) < 1e-10 * std::max(1.0, lhs.norm()));
    const Complex det = numerics::expm2(m, t).determinant();
    const Complex expected = std::exp(m.trace() * t);
    CHECK(std::abs(det - expected) < 1e-10 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("loglog_slope") {
  std::vector<double> xs;
  std::vector<double> inv_sqrt;
  std::vector<double> linear;
  for (int k = 0; k < 10; ++k) {
    const double x = std::pow(10.0, -4.0 + 0.3 * k);
    xs.push_back(x);
    inv_sqrt.push_back(1.0 / std::sqrt(x));
    linear.push_back(3.5 * x);
  }
  CHECK(numerics::loglog_slope(xs, inv_sqrt) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(numerics::loglog_slope(xs, linear) == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<double> two{1.0, 2.0};
  CHECK_THROWS_AS(numerics::loglog_slope(two, two), InsufficientSamples);
  const std::vector<double> bad{1.0, -2.0, 3.0};
  const std::vector<double> ok{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(numerics::loglog_slope(bad, ok), NonPositiveData);
  CHECK_THROWS_AS(numerics::loglog_slope(ok, bad), NonPositiveData);
}
