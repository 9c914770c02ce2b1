#include "nhjc/model.hpp"

#include "nhjc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace nhjc {

double ModelParams::delta() const noexcept { return std::sqrt(static_cast<double>(n) + 1.0) * gamma; }

void ModelParams::validate() const {
  if (!std::isfinite(omega)) throw InvalidParams("omega must be finite");
  if (!std::isfinite(epsilon)) throw InvalidParams("epsilon must be finite");
  if (!std::isfinite(gamma)) throw InvalidParams("gamma must be finite");
}

std::string_view to_string(MatrixRole role) noexcept {
  switch (role) {
    case MatrixRole::Hamiltonian: return "hamiltonian";
    case MatrixRole::HamiltonianDagger: return "hamiltonian_dagger";
    case MatrixRole::Metric: return "metric";
    case MatrixRole::Intertwiner: return "intertwiner";
    case MatrixRole::IntertwinerInverse: return "intertwiner_inverse";
    case MatrixRole::Isospectral: return "isospectral";
    case MatrixRole::Projector: return "projector";
    case MatrixRole::Propagator: return "propagator";
  }
  return "unknown";
}

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::Unbroken: return "unbroken";
    case Phase::Broken: return "broken";
    case Phase::ExceptionalPoint: return "exceptional_point";
  }
  return "unknown";
}

}  // namespace nhjc

namespace nhjc::model {

BlockMatrix build_block(const ModelParams& p) {
  p.validate();
  const double n = static_cast<double>(p.n);
  const double coupling = p.delta();
  BlockMatrix out;
  out.role = MatrixRole::Hamiltonian;
  out.entries << 0.5 * p.epsilon + n * p.omega, coupling, -coupling, -0.5 * p.epsilon + (n + 1.0) * p.omega;
  return out;
}

BlockMatrix build_block_dagger(const ModelParams& p) {
  BlockMatrix out = build_block(p);
  out.entries = out.entries.adjoint().eval();
  out.role = MatrixRole::HamiltonianDagger;
  return out;
}

namespace {

double coupling_term(const ModelParams& p) noexcept {
  return 4.0 * p.gamma * p.gamma * (static_cast<double>(p.n) + 1.0);
}

}  // namespace

double discriminant(const ModelParams& p) noexcept {
  const double detuning = p.omega - p.epsilon;
  return detuning * detuning - coupling_term(p);
}

double ep_tolerance(const ModelParams& p) noexcept {
  const double detuning = p.omega - p.epsilon;
  return 1e-10 * std::max({1.0, detuning * detuning, coupling_term(p)});
}

Spectrum spectrum_closed_form(const ModelParams& p) {
  p.validate();
  const double disc = discriminant(p);
  const double centre = 0.5 * (2.0 * static_cast<double>(p.n) + 1.0) * p.omega;
  if (disc >= 0.0) {
    const double half = 0.5 * std::sqrt(disc);
    return Spectrum{Complex(centre + half, 0.0), Complex(centre - half, 0.0)};
  }
  const double half = 0.5 * std::sqrt(-disc);
  return Spectrum{Complex(centre, half), Complex(centre, -half)};
}

PhaseLabel classify_phase(const ModelParams& p) {
  p.validate();
  const double disc = discriminant(p);
  const double tol = ep_tolerance(p);
  PhaseLabel out;
  out.discriminant = disc;
  if (disc > tol) {
    out.value = Phase::Unbroken;
  } else if (disc < -tol) {
    out.value = Phase::Broken;
  } else {
    out.value = Phase::ExceptionalPoint;
  }
  return out;
}

double critical_gamma(const ModelParams& p) {
  p.validate();
  return std::abs(p.omega - p.epsilon) / (2.0 * std::sqrt(static_cast<double>(p.n) + 1.0));
}

double ground_state_energy(const ModelParams& p) {
  p.validate();
  // a|0> = 0 and sigma_-|-1/2> = 0 leave only the Zeeman term.
  return -0.5 * p.epsilon;
}

Complex eigenvector_ratio(const ModelParams& p, Branch branch) {
  p.validate();
  if (p.gamma == 0.0) {
    throw ZeroCoupling("eigenvector ratio is undefined at gamma = 0");
  }
  const double detuning = p.omega - p.epsilon;
  const double disc = discriminant(p);
  const double denom = 2.0 * p.delta();
  if (disc < 0.0) {
    const Complex root(0.0, std::sqrt(-disc));
    return branch == Branch::I ? (detuning + root) / denom : (detuning - root) / denom;
  }
  const double root = std::sqrt(disc);
  // Pick the branch whose numerator adds magnitudes.
  const Branch stable = detuning >= 0.0 ? Branch::I : Branch::II;
  const double stable_value = stable == Branch::I ? (detuning + root) / denom : (detuning - root) / denom;
  return branch == stable ? Complex(stable_value) : Complex(1.0 / stable_value);
}

}  // namespace nhjc::model
