#pragma once

// Small dense kernels for 2x2 complex blocks. These are written out by hand
// rather than delegated to Eigen's iterative solvers so that they can serve
// as independent cross-checks for the closed-form model expressions.

#include "nhjc/types.hpp"

#include <array>
#include <span>

namespace nhjc::numerics {

struct EigenPair2 {
  std::array<Complex, 2> values{};
  // right[i]: M right[i] = values[i] right[i]
  std::array<Vec2, 2> right{};
  // left[i]: M^dagger left[i] = conj(values[i]) left[i], i.e. <left[i]| M = values[i] <left[i]|
  std::array<Vec2, 2> left{};
  bool defective = false;
};

double frobenius_norm(const Mat2& m) noexcept;

/// Frobenius norm of m - m^dagger.
double hermiticity_residual(const Mat2& m) noexcept;

/// Condition number (2-norm) of the matrix whose columns are a and b.
double column_condition(const Vec2& a, const Vec2& b) noexcept;

/// Eigenvalues via the numerically stable quadratic formula on the
/// characteristic polynomial; eigenvectors from the better-conditioned row
/// of M - lambda I. Never throws; a defective input sets `defective`.
EigenPair2 eig2(const Mat2& m);

/// Principal square root of a Hermitian positive-definite matrix by spectral
/// decomposition. Throws NotHermitian / NotPositiveDefinite.
Mat2 sqrt_hpd(const Mat2& m);

/// exp(M t) from the trace / traceless split. The traceless part N satisfies
/// N^2 = q^2 I, so exp(N t) = cosh(q t) I + sinh(q t)/q N.
Mat2 expm2(const Mat2& m, double t);

/// Ordinary least-squares slope of ln(ys) against ln(xs).
/// Throws InsufficientSamples (< 3 points or size mismatch) and NonPositiveData.
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

// Pauli matrices in the block basis.
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

}  // namespace nhjc::numerics
