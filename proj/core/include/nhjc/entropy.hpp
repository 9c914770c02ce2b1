#pragma once

#include "nhjc/types.hpp"

#include <span>
#include <vector>

namespace nhjc::entropy {

enum class Side { Right, Left };

/// Eigenvalues {lambda, 1 - lambda} of the reduced spin state obtained by
/// tracing the oscillator out of a Dirac-normalised block eigenvector.
/// lambda is the weight of |+1/2>.
struct ReducedSpectrum {
  double lambda = 1.0;
  double complement = 0.0;
  Branch branch = Branch::I;
};

struct EntropyPoint {
  double delta_sq = 0.0;  // (n+1) gamma^2
  double S_I = 0.0;       // nats
  double S_II = 0.0;
};

/// Coefficient of |n+1,-1/2> relative to |n,+1/2> in the right eigenvector.
/// Throws ZeroCoupling at gamma = 0.
Complex alpha_coefficient(const ModelParams& p, Branch branch);

/// At gamma = 0 the eigenvectors are product states and lambda = 1.
ReducedSpectrum reduced_spectrum(const ModelParams& p, Branch branch, Side side = Side::Right);

/// -lambda ln lambda - (1 - lambda) ln(1 - lambda), with 0 ln 0 = 0.
double binary_entropy(double lambda) noexcept;

/// Spin-oscillator entanglement entropy in nats. At gamma = 0 this is 0; at
/// the exceptional point, where the eigenvectors coalesce, the common
/// one-sided limit ln 2 is returned.
double entanglement_entropy(const ModelParams& p, Branch branch);

/// S^I and S^II along a grid of delta^2 values at fixed (omega, epsilon, n).
/// p.gamma is ignored.
std::vector<EntropyPoint> entropy_curve(const ModelParams& p, std::span<const double> delta_sq_grid);

}  // namespace nhjc::entropy
