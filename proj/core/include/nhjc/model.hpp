#pragma once

#include "nhjc/types.hpp"

namespace nhjc::model {

/// H_{n+1} in the block basis {|n, +1/2>, |n+1, -1/2>}:
///   [[ eps/2 + n w,      g sqrt(n+1)      ],
///    [ -g sqrt(n+1),    -eps/2 + (n+1) w  ]]
BlockMatrix build_block(const ModelParams& p);

/// Conjugate transpose of build_block(p).
BlockMatrix build_block_dagger(const ModelParams& p);

/// (omega - epsilon)^2 - 4 gamma^2 (n+1).
double discriminant(const ModelParams& p) noexcept;

/// Half-width of the band |discriminant| <= tol treated as the exceptional
/// point: 1e-10 * max(1, (omega - epsilon)^2, 4 gamma^2 (n+1)).
double ep_tolerance(const ModelParams& p) noexcept;

/// R^{I,II} = ((2n+1) omega +- sqrt(discriminant)) / 2, principal branch of
/// the square root, so Im R^I > 0 in the broken phase.
Spectrum spectrum_closed_form(const ModelParams& p);

PhaseLabel classify_phase(const ModelParams& p);

/// |omega - epsilon| / (2 sqrt(n+1)); p.gamma is ignored.
double critical_gamma(const ModelParams& p);

/// Energy of the global singlet |0, -1/2>, which lies outside every block.
double ground_state_energy(const ModelParams& p);

/// Ratio of the |n+1,-1/2> to the |n,+1/2> component of the right
/// eigenvector on the given branch:
///   alpha = ((omega - epsilon) +- sqrt(discriminant)) / (2 gamma sqrt(n+1)).
/// The two branches satisfy alpha_I * alpha_II = 1; the branch that would
/// suffer cancellation is obtained from the other as a reciprocal.
/// Requires gamma != 0 (throws ZeroCoupling).
Complex eigenvector_ratio(const ModelParams& p, Branch branch);

}  // namespace nhjc::model
