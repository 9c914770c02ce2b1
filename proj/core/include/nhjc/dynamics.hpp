#pragma once

#include "nhjc/types.hpp"

#include <array>

namespace nhjc::dynamics {

/// 2x2 density operator rho = (weight / 2) (I + r . sigma) on one block.
///
/// The Pauli matrices act on the block basis {|n,+1/2>, |n+1,-1/2>}; r is a
/// coordinate in that subspace, not a lab-frame spin direction.
struct BlochState {
  std::array<double, 3> r{0.0, 0.0, 1.0};
  double weight = 1.0;

  Mat2 density_matrix() const;
  static BlochState from_density_matrix(const Mat2& rho);
  double bloch_norm() const noexcept;
};

/// Isospectral representative  calH = shift I + i Gamma sigma_y.
///
/// Broken phase: Gamma real and positive. Unbroken phase: Gamma = i Lambda
/// with Lambda > 0, so calH = shift I - Lambda sigma_y is Hermitian.
struct EffectiveGenerator {
  unsigned n = 0;
  Complex gamma_eff;
  double shift = 0.0;
  Phase phase = Phase::Broken;
  bool similarity_verified = false;  // eig(calH) == eig(H_{n+1}) to 1e-10

  /// Gamma in the broken phase, Lambda in the unbroken phase.
  double rate() const noexcept;
  Mat2 matrix() const;
};

EffectiveGenerator effective_generator(const ModelParams& p);

/// U = exp(-i pi/4 sigma_x); U h U^dagger = calH for the diagonal h of the
/// unbroken phase.
Mat2 rotation_to_effective();

/// No-jump evolution rho(t) = e^{-i calH t} rho(0) e^{+i calH^dagger t}, with
/// the global phase e^{-i shift t} cancelled. The result is unnormalised: its
/// weight is the survival probability times rho0.weight.
BlochState evolve_no_jump(const EffectiveGenerator& gen, const BlochState& rho0, double t);

/// D(t) = Tr rho(t) = cosh(2 Gamma t) + r_y sinh(2 Gamma t) in the broken
/// phase, identically 1 in the unbroken phase (for unit initial weight).
double survival_probability(const EffectiveGenerator& gen, const BlochState& rho0, double t);

/// Rescale to unit trace. Throws ZeroWeight when weight <= 1e-300.
BlochState normalized_state(const BlochState& state);

/// Default trajectory window 0 .. 5 / rate.
double default_horizon(const EffectiveGenerator& gen) noexcept;

}  // namespace nhjc::dynamics
