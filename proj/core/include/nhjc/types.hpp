#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string_view>

namespace nhjc {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

/// Physical parameters of one invariant block (hbar = 1).
///
/// The block with index n spans |n, +1/2> and |n+1, -1/2>. `gamma` may be
/// negative; every phase and entropy result depends on gamma only through
/// gamma^2.
struct ModelParams {
  double omega = 1.0;    // oscillator frequency
  double epsilon = 5.0;  // two-level splitting, 2 mu B0
  double gamma = 0.0;    // non-Hermitian coupling
  unsigned n = 0;        // block index

  /// Effective coupling delta_{n+1} = sqrt(n+1) * gamma (sign follows gamma).
  double delta() const noexcept;

  /// Throws InvalidParams when a field is not finite.
  void validate() const;
};

enum class MatrixRole {
  Hamiltonian,
  HamiltonianDagger,
  Metric,
  Intertwiner,
  IntertwinerInverse,
  Isospectral,
  Projector,
  Propagator,
};

std::string_view to_string(MatrixRole role) noexcept;

/// A 2x2 block operator tagged with what it represents.
struct BlockMatrix {
  Mat2 entries = Mat2::Zero();
  MatrixRole role = MatrixRole::Hamiltonian;

  Complex operator()(Eigen::Index row, Eigen::Index col) const { return entries(row, col); }
};

enum class Phase { Unbroken, Broken, ExceptionalPoint };

std::string_view to_string(Phase phase) noexcept;

struct PhaseLabel {
  Phase value = Phase::Unbroken;
  double discriminant = 0.0;  // (omega - epsilon)^2 - 4 gamma^2 (n+1)
};

enum class Branch { I, II };

/// Eigenvalue pair of one block. Branch I carries the '+' root of the
/// discriminant, branch II the '-' root.
struct Spectrum {
  Complex eigenvalue_I;
  Complex eigenvalue_II;

  Complex operator[](Branch b) const noexcept { return b == Branch::I ? eigenvalue_I : eigenvalue_II; }
};

}  // namespace nhjc
