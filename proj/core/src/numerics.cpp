#include "nhjc/numerics.hpp"

#include "nhjc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nhjc::numerics {
namespace {

constexpr double kDefectiveGap = 1e-10;
constexpr double kDefectiveCondition = 1e8;
constexpr double kHermitianTol = 1e-10;

double scale_of(const Mat2& m) noexcept { return std::max(1.0, frobenius_norm(m)); }

// Null vector of the rank-deficient matrix [[p, q], [r, s]], read off the row
// with the larger norm. Returns false when both rows vanish (N ~ 0).
bool null_vector(const Mat2& n, double tol, Vec2& out) {
  const double row0 = std::norm(n(0, 0)) + std::norm(n(0, 1));
  const double row1 = std::norm(n(1, 0)) + std::norm(n(1, 1));
  if (std::max(row0, row1) <= tol * tol) {
    return false;
  }
  if (row0 >= row1) {
    out << n(0, 1), -n(0, 0);
  } else {
    out << n(1, 1), -n(1, 0);
  }
  out.normalize();
  return true;
}

}  // namespace

double frobenius_norm(const Mat2& m) noexcept { return m.norm(); }

double hermiticity_residual(const Mat2& m) noexcept { return (m - m.adjoint()).norm(); }

double column_condition(const Vec2& a, const Vec2& b) noexcept {
  const double aa = a.squaredNorm();
  const double bb = b.squaredNorm();
  const double ab = std::norm(a.dot(b));
  const double det = aa * bb - ab;
  if (!(det > 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  const double tr = aa + bb;
  const double root = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  const double hi = 0.5 * (tr + root);
  const double lo = det / hi;
  return std::sqrt(hi / lo);
}

EigenPair2 eig2(const Mat2& m) {
  const Complex a = m(0, 0);
  const Complex b = m(0, 1);
  const Complex c = m(1, 0);
  const Complex d = m(1, 1);

  const Complex tr = a + d;
  const Complex det = a * d - b * c;
  // Discriminant of lambda^2 - tr lambda + det, written so that it does not
  // cancel for nearly-triangular input.
  const Complex disc = (a - d) * (a - d) + 4.0 * b * c;
  const Complex root = std::sqrt(disc);

  EigenPair2 out;
  // Add the root with the sign that avoids cancellation against the trace,
  // then recover the other eigenvalue from the product det.
  const bool plus = std::real(std::conj(tr) * root) >= 0.0;
  const Complex q = 0.5 * (plus ? tr + root : tr - root);
  Complex other;
  if (std::abs(q) > 0.0) {
    other = det / q;
  } else {
    other = 0.5 * (plus ? tr - root : tr + root);
  }
  // values[0] is always the '+root' eigenvalue.
  out.values = plus ? std::array<Complex, 2>{q, other} : std::array<Complex, 2>{other, q};

  const double scale = scale_of(m);
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  const Mat2 id = Mat2::Identity();
  for (int i = 0; i < 2; ++i) {
    const Complex lam = out.values[static_cast<std::size_t>(i)];
    Vec2 r;
    Vec2 l;
    if (!null_vector(m - lam * id, tol, r)) {
      r = Vec2::Unit(i);
    }
    if (!null_vector(m.adjoint() - std::conj(lam) * id, tol, l)) {
      l = Vec2::Unit(i);
    }
    out.right[static_cast<std::size_t>(i)] = r;
    out.left[static_cast<std::size_t>(i)] = l;
  }

  const double gap = std::abs(out.values[0] - out.values[1]);
  out.defective = gap < kDefectiveGap * scale &&
                  column_condition(out.right[0], out.right[1]) > kDefectiveCondition;
  return out;
}

Mat2 sqrt_hpd(const Mat2& m) {
  const double scale = scale_of(m);
  if (hermiticity_residual(m) > kHermitianTol * scale) {
    throw NotHermitian("sqrt_hpd: input is not Hermitian (residual " +
                       std::to_string(hermiticity_residual(m)) + ")");
  }
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));

  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), std::abs(b));
  const double upper = mean + radius;
  if (!(upper > 0.0)) {
    throw NotPositiveDefinite("sqrt_hpd: largest eigenvalue is not positive");
  }
  const double lower = (a * d - std::norm(b)) / upper;
  if (!(lower > 0.0)) {
    throw NotPositiveDefinite("sqrt_hpd: smallest eigenvalue is not positive");
  }

  // f(M) = f(lo) P_lo + f(hi) P_hi with P_hi = (M - lo)/(hi - lo); for
  // f = sqrt this collapses to sqrt(lo) I + (M - lo I) / (sqrt(hi) + sqrt(lo)).
  Mat2 herm;
  herm << a, b, std::conj(b), d;
  const double root_lo = std::sqrt(lower);
  const double root_hi = std::sqrt(upper);
  Mat2 out = root_lo * Mat2::Identity() + (herm - lower * Mat2::Identity()) / (root_hi + root_lo);
  return 0.5 * (out + out.adjoint());
}

Mat2 expm2(const Mat2& m, double t) {
  const Complex half_tr = 0.5 * (m(0, 0) + m(1, 1));
  const Mat2 traceless = m - half_tr * Mat2::Identity();
  const Complex q_sq = traceless(0, 0) * traceless(0, 0) + traceless(0, 1) * traceless(1, 0);
  const Complex q = std::sqrt(q_sq);
  const Complex x = q * t;

  Complex cosh_term;
  Complex sinhc_term;  // sinh(q t) / q
  if (std::abs(x) < 1e-6) {
    const Complex x2 = x * x;
    cosh_term = 1.0 + x2 / 2.0 + x2 * x2 / 24.0;
    sinhc_term = t * (1.0 + x2 / 6.0);
  } else {
    cosh_term = std::cosh(x);
    sinhc_term = std::sinh(x) / q;
  }
  return std::exp(half_tr * t) * (cosh_term * Mat2::Identity() + sinhc_term * traceless);
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw InsufficientSamples("loglog_slope: xs and ys differ in length");
  }
  if (xs.size() < 3) {
    throw InsufficientSamples("loglog_slope: need at least 3 points, got " + std::to_string(xs.size()));
  }
  double sx = 0.0;
  double sy = 0.0;
  const auto count = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw NonPositiveData("loglog_slope: all samples must be positive");
    }
    sx += std::log(xs[i]);
    sy += std::log(ys[i]);
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(ys[i]) - my);
  }
  if (!(sxx > 0.0)) {
    throw InsufficientSamples("loglog_slope: abscissae are all equal");
  }
  return sxy / sxx;
}

Mat2 pauli_x() {
  Mat2 s;
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

Mat2 pauli_y() {
  Mat2 s;
  s << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return s;
}

Mat2 pauli_z() {
  Mat2 s;
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

}  // namespace nhjc::numerics
