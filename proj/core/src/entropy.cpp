#include "nhjc/entropy.hpp"

#include "nhjc/errors.hpp"
#include "nhjc/model.hpp"

#include <cmath>
#include <numbers>

namespace nhjc::entropy {

Complex alpha_coefficient(const ModelParams& p, Branch branch) {
  return model::eigenvector_ratio(p, branch);
}

ReducedSpectrum reduced_spectrum(const ModelParams& p, Branch branch, Side side) {
  ReducedSpectrum out;
  out.branch = branch;
  if (p.gamma == 0.0) {
    p.validate();
    return out;
  }
  // Right vector (1, alpha), left vector (1, -conj(alpha)): the oscillator
  // levels n and n+1 are orthogonal, so the reduced state is
  // diag(1, |alpha|^2) / (1 + |alpha|^2) on either side.
  const Complex alpha = alpha_coefficient(p, branch);
  const Complex second = side == Side::Right ? alpha : -std::conj(alpha);
  const double weight = std::norm(second);
  // Form the smaller share directly and the larger as its complement, so the
  // pair sums to one in floating point.
  if (weight <= 1.0) {
    out.complement = weight / (1.0 + weight);
    out.lambda = 1.0 - out.complement;
  } else {
    out.lambda = 1.0 / (1.0 + weight);
    out.complement = 1.0 - out.lambda;
  }
  return out;
}

double binary_entropy(double lambda) noexcept {
  auto term = [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
  return term(lambda) + term(1.0 - lambda);
}

double entanglement_entropy(const ModelParams& p, Branch branch) {
  if (model::classify_phase(p).value == Phase::ExceptionalPoint) {
    return std::numbers::ln2;
  }
  const ReducedSpectrum spec = reduced_spectrum(p, branch);
  auto term = [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
  return term(spec.lambda) + term(spec.complement);
}

std::vector<EntropyPoint> entropy_curve(const ModelParams& p, std::span<const double> delta_sq_grid) {
  std::vector<EntropyPoint> out;
  out.reserve(delta_sq_grid.size());
  const double blocks = static_cast<double>(p.n) + 1.0;
  for (const double delta_sq : delta_sq_grid) {
    if (!(delta_sq >= 0.0)) {
      throw InvalidParams("entropy_curve: delta^2 must be non-negative");
    }
    ModelParams q = p;
    q.gamma = std::sqrt(delta_sq / blocks);
    out.push_back({delta_sq, entanglement_entropy(q, Branch::I), entanglement_entropy(q, Branch::II)});
  }
  return out;
}

}  // namespace nhjc::entropy
