#include "nhjc/biortho.hpp"

#include "nhjc/errors.hpp"
#include "nhjc/model.hpp"
#include "nhjc/numerics.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace nhjc::biortho {
namespace {

void require_diagonalizable(const ModelParams& p, const PhaseLabel& label, const char* what) {
  if (label.value == Phase::ExceptionalPoint) {
    throw ExceptionalPointError(std::string(what) + ": block n=" + std::to_string(p.n) +
                                " is defective at gamma=" + std::to_string(p.gamma) +
                                " (discriminant " + std::to_string(label.discriminant) + ")");
  }
}

// Scale the pair so that <left|right> = 1 with |left| and |right| scaled by the
// same factor 1/sqrt|<left|right>|.
void biorthonormalize(Vec2& left, Vec2& right) {
  const Complex overlap = left.dot(right);
  const double root = std::sqrt(std::abs(overlap));
  right /= root;
  left *= root / std::conj(overlap);
}

}  // namespace

BiorthoSystem eigensystem(const ModelParams& p, Normalization norm) {
  const PhaseLabel label = model::classify_phase(p);
  require_diagonalizable(p, label, "eigensystem");

  BiorthoSystem sys;
  sys.eigenvalues = model::spectrum_closed_form(p);
  sys.normalization = norm;

  if (p.gamma == 0.0) {
    // Diagonal block: eigenvectors are basis vectors and left = right.
    const Mat2 h = model::build_block(p).entries;
    const bool first_is_I = std::abs(sys.eigenvalues.eigenvalue_I - h(0, 0)) <=
                            std::abs(sys.eigenvalues.eigenvalue_I - h(1, 1));
    sys.right_I = Vec2::Unit(first_is_I ? 0 : 1);
    sys.right_II = Vec2::Unit(first_is_I ? 1 : 0);
    sys.left_I = sys.right_I;
    sys.left_II = sys.right_II;
    return sys;
  }

  const Complex alpha_I = model::eigenvector_ratio(p, Branch::I);
  const Complex alpha_II = model::eigenvector_ratio(p, Branch::II);
  // H^dagger (1, -conj(alpha))^T = conj(R) (1, -conj(alpha))^T, which pairs
  // the left vector with the right vector of the same branch in both phases.
  sys.right_I << 1.0, alpha_I;
  sys.right_II << 1.0, alpha_II;
  sys.left_I << 1.0, -std::conj(alpha_I);
  sys.left_II << 1.0, -std::conj(alpha_II);

  switch (norm) {
    case Normalization::Raw:
      break;
    case Normalization::DiracRight:
      sys.right_I.normalize();
      sys.right_II.normalize();
      sys.left_I.normalize();
      sys.left_II.normalize();
      break;
    case Normalization::Biorthogonal:
      biorthonormalize(sys.left_I, sys.right_I);
      biorthonormalize(sys.left_II, sys.right_II);
      break;
  }
  return sys;
}

BlockMatrix metric(const ModelParams& p) {
  const BiorthoSystem sys = eigensystem(p, Normalization::Biorthogonal);
  Mat2 g = sys.left_I * sys.left_I.adjoint() + sys.left_II * sys.left_II.adjoint();
  BlockMatrix out;
  out.role = MatrixRole::Metric;
  out.entries = 0.5 * (g + g.adjoint());
  return out;
}

MetricBundle intertwiner(const ModelParams& p) {
  MetricBundle out;
  out.phase = model::classify_phase(p);
  out.G = metric(p);

  out.g.role = MatrixRole::Intertwiner;
  out.g.entries = numerics::sqrt_hpd(out.G.entries);

  out.g_inv.role = MatrixRole::IntertwinerInverse;
  out.g_inv.entries = out.g.entries.inverse();

  out.h.role = MatrixRole::Isospectral;
  out.h.entries = out.g.entries * model::build_block(p).entries * out.g_inv.entries;
  return out;
}

std::pair<BlockMatrix, BlockMatrix> projectors(const ModelParams& p) {
  const BiorthoSystem sys = eigensystem(p, Normalization::Raw);
  auto make = [](const Vec2& right, const Vec2& left) {
    BlockMatrix rho;
    rho.role = MatrixRole::Projector;
    rho.entries = right * left.adjoint() / left.dot(right);
    return rho;
  };
  return {make(sys.right_I, sys.left_I), make(sys.right_II, sys.left_II)};
}

double pseudo_hermiticity_residual(const ModelParams& p) {
  const PhaseLabel label = model::classify_phase(p);
  require_diagonalizable(p, label, "pseudo_hermiticity_residual");
  if (label.value == Phase::Broken) {
    throw WrongPhase("pseudo_hermiticity_residual: H = G^-1 H^dagger G cannot hold in the broken phase");
  }
  const Mat2 h = model::build_block(p).entries;
  const Mat2 g = metric(p).entries;
  return (h - g.inverse() * h.adjoint() * g).norm();
}

double metric_divergence_exponent(const ModelParams& p, Side side, const ExponentWindow& window) {
  p.validate();
  if (!(window.min_offset > 0.0) || !(window.max_offset > window.min_offset) || window.samples < 3) {
    throw InsufficientSamples("metric_divergence_exponent: window needs 0 < min < max and >= 3 samples");
  }
  const double critical_delta = 0.5 * std::abs(p.omega - p.epsilon);
  const double root_n = std::sqrt(static_cast<double>(p.n) + 1.0);
  const Phase wanted = side == Side::Below ? Phase::Unbroken : Phase::Broken;
  const double ratio = std::log(window.max_offset / window.min_offset) / (window.samples - 1);

  std::vector<double> offsets;
  std::vector<double> norms;
  for (int k = 0; k < window.samples; ++k) {
    const double offset = window.min_offset * std::exp(ratio * k);
    const double delta = side == Side::Below ? critical_delta - offset : critical_delta + offset;
    if (delta <= 0.0) continue;
    ModelParams q = p;
    q.gamma = delta / root_n;
    if (model::classify_phase(q).value != wanted) continue;
    offsets.push_back(offset);
    norms.push_back(metric(q).entries.norm());
  }
  if (offsets.size() < 3) {
    throw InsufficientSamples("metric_divergence_exponent: only " + std::to_string(offsets.size()) +
                              " ladder points fall on the requested side of the exceptional point");
  }
  return numerics::loglog_slope(offsets, norms);
}

}  // namespace nhjc::biortho
