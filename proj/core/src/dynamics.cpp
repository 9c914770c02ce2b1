#include "nhjc/dynamics.hpp"

#include "nhjc/errors.hpp"
#include "nhjc/model.hpp"
#include "nhjc/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nhjc::dynamics {

Mat2 BlochState::density_matrix() const {
  const Mat2 rho = Mat2::Identity() + r[0] * numerics::pauli_x() + r[1] * numerics::pauli_y() +
                   r[2] * numerics::pauli_z();
  return 0.5 * weight * rho;
}

BlochState BlochState::from_density_matrix(const Mat2& rho) {
  BlochState out;
  out.weight = (rho(0, 0) + rho(1, 1)).real();
  if (out.weight == 0.0) {
    throw ZeroWeight("from_density_matrix: zero trace");
  }
  // Tr(rho sigma_k) / Tr(rho)
  out.r[0] = (rho(0, 1) + rho(1, 0)).real() / out.weight;
  out.r[1] = (Complex(0.0, 1.0) * (rho(0, 1) - rho(1, 0))).real() / out.weight;
  out.r[2] = (rho(0, 0) - rho(1, 1)).real() / out.weight;
  return out;
}

double BlochState::bloch_norm() const noexcept { return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]); }

double EffectiveGenerator::rate() const noexcept {
  return phase == Phase::Broken ? gamma_eff.real() : gamma_eff.imag();
}

Mat2 EffectiveGenerator::matrix() const {
  return shift * Mat2::Identity() + Complex(0.0, 1.0) * gamma_eff * numerics::pauli_y();
}

EffectiveGenerator effective_generator(const ModelParams& p) {
  const PhaseLabel label = model::classify_phase(p);
  if (label.value == Phase::ExceptionalPoint) {
    throw ExceptionalPointError("effective_generator: block n=" + std::to_string(p.n) +
                                " sits at the exceptional point");
  }
  EffectiveGenerator gen;
  gen.n = p.n;
  gen.phase = label.value;
  gen.shift = 0.5 * (2.0 * static_cast<double>(p.n) + 1.0) * p.omega;
  // Isospectrality fixes the rate: shift +- i Gamma must equal R^{I,II}.
  const double rate = 0.5 * std::sqrt(std::abs(label.discriminant));
  gen.gamma_eff = label.value == Phase::Broken ? Complex(rate, 0.0) : Complex(0.0, rate);

  const Spectrum target = model::spectrum_closed_form(p);
  const numerics::EigenPair2 eig = numerics::eig2(gen.matrix());
  const double scale = std::max(1.0, std::abs(target.eigenvalue_I) + std::abs(target.eigenvalue_II));
  const double direct = std::abs(eig.values[0] - target.eigenvalue_I) + std::abs(eig.values[1] - target.eigenvalue_II);
  const double swapped = std::abs(eig.values[0] - target.eigenvalue_II) + std::abs(eig.values[1] - target.eigenvalue_I);
  gen.similarity_verified = std::min(direct, swapped) <= 1e-10 * scale;
  return gen;
}

Mat2 rotation_to_effective() {
  const double c = std::cos(std::numbers::pi / 4.0);
  const double s = std::sin(std::numbers::pi / 4.0);
  return c * Mat2::Identity() - Complex(0.0, s) * numerics::pauli_x();
}

BlochState evolve_no_jump(const EffectiveGenerator& gen, const BlochState& rho0, double t) {
  BlochState out = rho0;
  const double rate = gen.rate();
  const auto [rx, ry, rz] = rho0.r;

  if (gen.phase == Phase::Broken) {
    // S rho S with S = exp(Gamma t sigma_y). Written in exponentials so that
    // the decaying r_y = -1 branch does not cancel catastrophically.
    const double x = 2.0 * rate * t;
    const double grow = std::exp(x);
    const double decay = std::exp(-x);
    const double trace = 0.5 * ((1.0 + ry) * grow + (1.0 - ry) * decay);
    const double y = 0.5 * ((1.0 + ry) * grow - (1.0 - ry) * decay);
    out.weight = rho0.weight * trace;
    out.r = {rx / trace, y / trace, rz / trace};
    return out;
  }

  // S rho S^dagger with S = exp(i Lambda t sigma_y): rotation of (r_x, r_z)
  // about the y axis by 2 Lambda t.
  const double theta = 2.0 * rate * t;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  out.r = {c * rx - s * rz, ry, s * rx + c * rz};
  return out;
}

double survival_probability(const EffectiveGenerator& gen, const BlochState& rho0, double t) {
  return evolve_no_jump(gen, rho0, t).weight;
}

BlochState normalized_state(const BlochState& state) {
  if (!(state.weight > 1e-300)) {
    throw ZeroWeight("normalized_state: no-jump branch has decayed to zero weight");
  }
  BlochState out = state;
  out.weight = 1.0;
  return out;
}

double default_horizon(const EffectiveGenerator& gen) noexcept {
  const double rate = gen.rate();
  return rate > 0.0 ? 5.0 / rate : 5.0;
}

}  // namespace nhjc::dynamics
