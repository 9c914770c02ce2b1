#include <doctest.h>

#include "nhjc/biortho.hpp"
#include "nhjc/errors.hpp"
#include "nhjc/model.hpp"
#include "nhjc/numerics.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace nhjc;
using nhjc::test::mat;
using nhjc::test::max_abs_diff;

namespace {

bool away_from_ep(const ModelParams& p) {
  return model::classify_phase(p).value != Phase::ExceptionalPoint &&
         std::abs(model::discriminant(p)) > 1e-3 * std::max(1.0, std::pow(p.omega - p.epsilon, 2));
}

}  // namespace

TEST_CASE("eigensystem examples") {
  const auto dirac = biortho::eigensystem({1, 5, 1, 0}, biortho::Normalization::DiracRight);
  const Complex ratio = dirac.right_I(1) / dirac.right_I(0);
  CHECK(std::abs(ratio - (std::sqrt(3.0) - 2.0)) < 1e-12);
  CHECK(std::abs(dirac.right_I.norm() - 1.0) < 1e-12);
  CHECK(std::abs(dirac.right_II.norm() - 1.0) < 1e-12);

  CHECK_THROWS_AS(biortho::eigensystem({1, 5, 2, 0}, biortho::Normalization::Raw), ExceptionalPointError);

  const auto bi = biortho::eigensystem({1, 5, 4, 0}, biortho::Normalization::Biorthogonal);
  CHECK(std::abs(bi.left_I.dot(bi.right_II)) < 1e-10);
  CHECK(std::abs(bi.left_II.dot(bi.right_I)) < 1e-10);
  CHECK(std::abs(bi.left_I.dot(bi.right_I) - 1.0) < 1e-10);
  const Complex alpha = bi.right_I(1) / bi.right_I(0);
  CHECK(std::abs(alpha - Complex(-2.0, std::sqrt(12.0)) / 4.0) < 1e-12);

  const auto raw = biortho::eigensystem({1, 5, 4, 0}, biortho::Normalization::Raw);
  CHECK(raw.right_I(0) == Complex(1.0));
  CHECK(raw.right_II(0) == Complex(1.0));
}

TEST_CASE("eigensystem vectors solve the eigenproblems") {
  test::ParamSampler sample(21);
  for (int i = 0; i < 5000; ++i) {
    const ModelParams p = sample();
    if (!away_from_ep(p)) continue;
    const Mat2 h = model::build_block(p).entries;
    const double scale = std::max(1.0, h.norm());
    const auto sys = biortho::eigensystem(p, biortho::Normalization::Biorthogonal);
    for (Branch b : {Branch::I, Branch::II}) {
      const Complex e = sys.eigenvalues[b];
      CHECK((h * sys.right(b) - e * sys.right(b)).norm() < 1e-8 * scale * sys.right(b).norm());
      CHECK((h.adjoint() * sys.left(b) - std::conj(e) * sys.left(b)).norm() < 1e-8 * scale * sys.left(b).norm());
    }
    CHECK(std::abs(sys.left_I.dot(sys.right_I) - 1.0) < 1e-10);
    CHECK(std::abs(sys.left_II.dot(sys.right_II) - 1.0) < 1e-10);
    CHECK(std::abs(sys.left_I.dot(sys.right_II)) < 1e-10);
    CHECK(std::abs(sys.left_II.dot(sys.right_I)) < 1e-10);

    const auto dirac = biortho::eigensystem(p, biortho::Normalization::DiracRight);
    CHECK(std::abs(dirac.right_I.squaredNorm() - 1.0) < 1e-12);
    CHECK(std::abs(dirac.right_II.squaredNorm() - 1.0) < 1e-12);
    Mat2 cols;
    cols << dirac.right_I, dirac.right_II;
    CHECK(std::abs(cols.determinant()) > 1e-8);
  }
}

TEST_CASE("metric examples") {
  const auto g0 = biortho::metric({1, 5, 0, 0});
  CHECK(g0.role == MatrixRole::Metric);
  CHECK(max_abs_diff(g0.entries, Mat2::Identity()) < 1e-12);

  const double r2 = std::sqrt(2.0);
  CHECK(max_abs_diff(biortho::metric({1, 5, r2, 0}).entries, mat(2.0, r2, r2, 2.0) / r2) < 1e-10);
  CHECK(max_abs_diff(biortho::metric({1, 5, 4, 0}).entries, mat(4.0, 2.0, 2.0, 4.0) / std::sqrt(12.0)) < 1e-10);
  CHECK_THROWS_AS(biortho::metric({1, 5, 2, 0}), ExceptionalPointError);
}

TEST_CASE("metric matches the closed forms at omega = 1, epsilon = 5 across both phases") {
  for (unsigned n : {0u, 1u, 2u, 3u}) {
    for (int k = 1; k < 80; ++k) {
      const double d = 0.05 * k;
      if (std::abs(d - 2.0) < 0.02) continue;
      const ModelParams p{1, 5, d / std::sqrt(n + 1.0), n};
      const bool broken = d > 2.0;
      const auto bundle = biortho::intertwiner(p);
      CHECK(max_abs_diff(bundle.G.entries, broken ? test::closed::G_broken(d) : test::closed::G(d)) < 1e-10);
      CHECK(max_abs_diff(bundle.g.entries, broken ? test::closed::g_broken(d) : test::closed::g(d)) < 1e-10);
      CHECK(max_abs_diff(bundle.g_inv.entries, broken ? test::closed::g_inv_broken(d) : test::closed::g_inv(d)) <
            1e-10);
      CHECK(max_abs_diff(bundle.h.entries, broken ? test::closed::h_broken(n, p.gamma) : test::closed::h(n, p.gamma)) <
            1e-10);
      const auto [rho_i, rho_ii] = biortho::projectors(p);
      CHECK(max_abs_diff(rho_i.entries, broken ? test::closed::rho_I_broken(d) : test::closed::rho_I(d)) < 1e-10);
      CHECK(max_abs_diff(rho_ii.entries, broken ? test::closed::rho_II_broken(d) : test::closed::rho_II(d)) < 1e-10);
    }
  }
}

TEST_CASE("intertwiner examples") {
  const auto u = biortho::intertwiner({1, 5, 1, 0});
  CHECK(max_abs_diff(u.h.entries, mat(0.5 + std::sqrt(3.0), 0.0, 0.0, 0.5 - std::sqrt(3.0))) < 1e-10);
  CHECK(u.phase.value == Phase::Unbroken);

  const auto z = biortho::intertwiner({1, 5, 0, 0});
  CHECK(max_abs_diff(z.g.entries, Mat2::Identity()) < 1e-12);
  CHECK(max_abs_diff(z.h.entries, mat(2.5, 0.0, 0.0, -1.5)) < 1e-12);

  const double r12 = std::sqrt(12.0);
  const auto b = biortho::intertwiner({1, 5, 4, 0});
  CHECK(max_abs_diff(b.h.entries, mat(0.5, r12, -r12, 0.5)) < 1e-10);
  CHECK(numerics::hermiticity_residual(b.h.entries) > 0.1);
  CHECK(b.phase.value == Phase::Broken);
  CHECK(b.G.role == MatrixRole::Metric);
  CHECK(b.g.role == MatrixRole::Intertwiner);
  CHECK(b.g_inv.role == MatrixRole::IntertwinerInverse);
  CHECK(b.h.role == MatrixRole::Isospectral);
}

TEST_CASE("intertwiner invariants over random parameters") {
  test::ParamSampler sample(22);
  for (int i = 0; i < 5000; ++i) {
    const ModelParams p = sample();
    if (!away_from_ep(p)) continue;
    const auto m = biortho::intertwiner(p);
    const double gscale = std::max(1.0, m.G.entries.norm());
    CHECK(numerics::hermiticity_residual(m.G.entries) < 1e-12 * gscale);
    const auto ev = test::hermitian_eigenvalues(m.G.entries);
    CHECK(ev[0] > 0.0);
    CHECK(max_abs_diff(m.g.entries * m.g.entries, m.G.entries) < 1e-10 * gscale);
    CHECK(max_abs_diff(m.g.entries * m.g_inv.entries, Mat2::Identity()) < 1e-10 * gscale);

    const Mat2 h = model::build_block(p).entries;
    const double scale = std::max(1.0, h.norm());
    const auto s = model::spectrum_closed_form(p);
    CHECK(test::pair_distance(test::schur_eigenvalues(m.h.entries), {s.eigenvalue_I, s.eigenvalue_II}) <
          1e-10 * scale * gscale);
    if (m.phase.value == Phase::Unbroken) {
      CHECK(numerics::hermiticity_residual(m.h.entries) < 1e-10 * scale * gscale);
      // G H is Hermitian but not isospectral to H.
      CHECK(numerics::hermiticity_residual(m.G.entries * h) < 1e-10 * scale * gscale);
    }
  }
}

TEST_CASE("projector examples and algebra") {
  const auto [a, b] = biortho::projectors({1, 5, 0, 0});
  CHECK(max_abs_diff(a.entries, mat(1.0, 0.0, 0.0, 0.0)) < 1e-12);
  CHECK(max_abs_diff(b.entries, mat(0.0, 0.0, 0.0, 1.0)) < 1e-12);
  CHECK(a.role == MatrixRole::Projector);

  const double r3 = std::sqrt(3.0);
  CHECK(max_abs_diff(biortho::projectors({1, 5, 1, 0}).first.entries, mat(r3 + 2.0, 1.0, -1.0, r3 - 2.0) / (2.0 * r3)) <
        1e-10);
  const Complex is(0.0, std::sqrt(12.0));
  CHECK(max_abs_diff(biortho::projectors({1, 5, 4, 0}).first.entries, mat(is + 2.0, 4.0, -4.0, is - 2.0) / (2.0 * is)) <
        1e-10);
  CHECK_THROWS_AS(biortho::projectors({1, 5, 2, 0}), ExceptionalPointError);

  test::ParamSampler sample(23);
  for (int i = 0; i < 5000; ++i) {
    const ModelParams p = sample();
    if (!away_from_ep(p)) continue;
    const auto [ri, rii] = biortho::projectors(p);
    const Mat2& x = ri.entries;
    const Mat2& y = rii.entries;
    const double tol = 1e-10 * std::max({1.0, x.norm(), y.norm()});
    CHECK(std::abs(x.trace() - 1.0) < tol);
    CHECK(std::abs(y.trace() - 1.0) < tol);
    CHECK(max_abs_diff(x * x, x) < tol * std::max(1.0, x.norm()));
    CHECK(max_abs_diff(y * y, y) < tol * std::max(1.0, y.norm()));
    CHECK(max_abs_diff(x + y, Mat2::Identity()) < tol);
    CHECK((x * y).cwiseAbs().maxCoeff() < tol * std::max(1.0, x.norm()));
  }
}

TEST_CASE("pseudo_hermiticity_residual") {
  CHECK(biortho::pseudo_hermiticity_residual({1, 5, 1, 0}) < 1e-10);
  CHECK(biortho::pseudo_hermiticity_residual({1, 5, 0, 0}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(biortho::pseudo_hermiticity_residual({1, 5, 4, 0}), WrongPhase);
  CHECK_THROWS_AS(biortho::pseudo_hermiticity_residual({1, 5, 2, 0}), ExceptionalPointError);

  test::ParamSampler sample(24);
  for (int i = 0; i < 2000; ++i) {
    const ModelParams p = sample();
    if (!away_from_ep(p) || model::classify_phase(p).value != Phase::Unbroken) continue;
    const double scale = std::max(1.0, model::build_block(p).entries.norm());
    CHECK(biortho::pseudo_hermiticity_residual(p) < 1e-10 * scale * std::max(1.0, biortho::metric(p).entries.norm()));
  }
}

TEST_CASE("G-norm is conserved in the unbroken phase") {
  std::mt19937_64 rng(25);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> time(0.0, 10.0);
  for (const ModelParams p : {ModelParams{1, 5, 1, 0}, ModelParams{1, 5, 0.5, 3}, ModelParams{-2, 3, 1.2, 1}}) {
    const Mat2 h = model::build_block(p).entries;
    const Mat2 G = biortho::metric(p).entries;
    for (int k = 0; k < 50; ++k) {
      Vec2 psi(Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng)));
      const double n0 = psi.dot(G * psi).real();
      const Vec2 pt = numerics::expm2(Complex(0.0, -1.0) * h, time(rng)) * psi;
      CHECK(std::abs(pt.dot(G * pt).real() - n0) < 1e-9 * n0);
    }
  }
}

TEST_CASE("metric divergence exponent") {
  CHECK(biortho::metric_divergence_exponent({1, 5, 0, 0}, biortho::Side::Below) == doctest::Approx(-0.5).epsilon(0.04));
  CHECK(biortho::metric_divergence_exponent({1, 5, 0, 0}, biortho::Side::Above) == doctest::Approx(-0.5).epsilon(0.04));
  CHECK(biortho::metric_divergence_exponent({1, 5, 0, 3}, biortho::Side::Below) == doctest::Approx(-0.5).epsilon(0.04));
  CHECK(biortho::metric_divergence_exponent({1, 5, 0, 3}, biortho::Side::Above) == doctest::Approx(-0.5).epsilon(0.04));
  CHECK(biortho::metric_divergence_exponent({2, -3, 0, 1}, biortho::Side::Above) == doctest::Approx(-0.5).epsilon(0.04));

  // Below delta_c = 0.05 only offsets up to 0.05 fit.
  CHECK_THROWS_AS(biortho::metric_divergence_exponent({1, 1.1, 0, 0}, biortho::Side::Below, {1e-1, 1.0, 20}),
                  InsufficientSamples);
}
