#pragma once

#include "nhjc/types.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nhjc::scan {

enum class AxisName { Gamma, Epsilon, Omega, Delta, DeltaSq, Time };

std::string_view to_string(AxisName name) noexcept;
std::optional<AxisName> parse_axis_name(std::string_view text) noexcept;

struct Axis {
  AxisName name = AxisName::Gamma;
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  /// Uniform grid point i in [0, steps); the last point is exactly max.
  double at(int i) const noexcept;
};

/// Parses "AXIS:MIN:MAX:STEPS". Throws SpecValidationError.
Axis parse_grid(std::string_view text);

enum class Quantity { Eigenvalues, Phase, MetricNorm, Entropy, Survival, Bloch };

std::string_view to_string(Quantity q) noexcept;
std::optional<Quantity> parse_quantity(std::string_view text) noexcept;

/// Parameters held fixed across the sweep; axes override individual fields.
struct FixedParams {
  double omega = 1.0;
  double epsilon = 5.0;
  double gamma = 0.0;
  unsigned n = 0;
  double t = 0.0;
  std::array<double, 3> initial_bloch{0.0, 0.0, 1.0};
};

struct SweepSpec {
  FixedParams fixed;
  std::vector<Axis> axes;             // one or two; axes[0] varies fastest
  std::vector<Quantity> quantities;   // sorted, unique
  std::vector<unsigned> n_list;       // empty: just fixed.n
  std::string preset;                 // informational; echoed into exports

  /// Throws SpecValidationError naming the offending field.
  void validate() const;
  std::vector<unsigned> blocks() const;
  bool wants(Quantity q) const noexcept;
};

/// Named sweeps: fig1, fig2a..fig2d, fig3. Axis ranges for fig2 are
/// hand-picked to show both phase boundaries. Throws SpecValidationError.
SweepSpec preset(std::string_view name);
std::vector<std::string_view> preset_names();

using Extra = std::optional<double>;

/// One grid point. Columns that need eigenvectors (metric norm, entropy,
/// dynamics) are left empty inside the exceptional-point band.
struct PhaseCell {
  std::vector<std::pair<std::string, double>> coords;
  unsigned n = 0;
  PhaseLabel phase;
  Spectrum eigenvalues;
  std::vector<std::pair<std::string, Extra>> extras;
};

/// Column names of the extras produced for the given quantities, in order.
std::vector<std::string> extra_columns(const SweepSpec& spec);

/// Evaluates every grid point. Cells are ordered by block, then axes[1],
/// then axes[0], independent of the number of worker threads
/// (0 = hardware concurrency).
std::vector<PhaseCell> run_sweep(const SweepSpec& spec, unsigned threads = 0);

}  // namespace nhjc::scan
