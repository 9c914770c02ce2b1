#pragma once

#include "nhjc/types.hpp"

#include <utility>

namespace nhjc::biortho {

enum class Normalization {
  Biorthogonal,  // <L_i|R_j> = delta_ij, |L| and |R| scaled symmetrically
  DiracRight,    // <R_i|R_i> = 1 and <L_i|L_i> = 1
  Raw,           // first nonzero component fixed to +1
};

/// Paired left/right eigenvectors of one block. left_X is the eigenvector of
/// H^dagger that pairs with right_X, i.e. its H^dagger-eigenvalue is
/// conj(eigenvalues[X]).
struct BiorthoSystem {
  Vec2 right_I;
  Vec2 right_II;
  Vec2 left_I;
  Vec2 left_II;
  Spectrum eigenvalues;
  Normalization normalization = Normalization::Raw;

  const Vec2& right(Branch b) const noexcept { return b == Branch::I ? right_I : right_II; }
  const Vec2& left(Branch b) const noexcept { return b == Branch::I ? left_I : left_II; }
};

struct MetricBundle {
  BlockMatrix G;      // Metric
  BlockMatrix g;      // Intertwiner, principal sqrt(G)
  BlockMatrix g_inv;  // IntertwinerInverse
  BlockMatrix h;      // Isospectral, g H g^{-1}
  PhaseLabel phase;
};

/// Throws ExceptionalPointError inside the exceptional-point band.
BiorthoSystem eigensystem(const ModelParams& p, Normalization norm);

/// G = sum_m |L_m><L_m| over biorthogonally normalised left eigenvectors.
BlockMatrix metric(const ModelParams& p);

/// g = sqrt(G), g^{-1}, and the isospectral h = g H g^{-1}. In the unbroken
/// phase h is Hermitian; in the broken phase it is not.
MetricBundle intertwiner(const ModelParams& p);

/// rho^X = |R_X><L_X| / <L_X|R_X> for X = I, II.
std::pair<BlockMatrix, BlockMatrix> projectors(const ModelParams& p);

/// ||H - G^{-1} H^dagger G||_F. Unbroken phase only; throws WrongPhase in the
/// broken phase and ExceptionalPointError at the exceptional point.
double pseudo_hermiticity_residual(const ModelParams& p);

enum class Side { Below, Above };

struct ExponentWindow {
  double min_offset = 1e-4;
  double max_offset = 1e-1;
  int samples = 20;
};

/// Least-squares slope of ln ||G||_F against ln |delta - delta_c| on a
/// geometric ladder of offsets approaching delta_c = |omega - epsilon| / 2
/// from the given side. p.gamma is ignored. Throws InsufficientSamples when
/// fewer than three ladder points land in the requested phase.
double metric_divergence_exponent(const ModelParams& p, Side side, const ExponentWindow& window = {});

}  // namespace nhjc::biortho
