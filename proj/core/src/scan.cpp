#include "nhjc/scan.hpp"

#include "nhjc/biortho.hpp"
#include "nhjc/dynamics.hpp"
#include "nhjc/entropy.hpp"
#include "nhjc/errors.hpp"
#include "nhjc/model.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <string>
#include <thread>

namespace nhjc::scan {
namespace {

bool sets_coupling(AxisName name) noexcept {
  return name == AxisName::Gamma || name == AxisName::Delta || name == AxisName::DeltaSq;
}

double parse_double(std::string_view text, const std::string& field) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw SpecValidationError(field, "expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

struct CellJob {
  unsigned n;
  int i;
  int j;
};

PhaseCell evaluate(const SweepSpec& spec, const CellJob& job) {
  ModelParams p{spec.fixed.omega, spec.fixed.epsilon, spec.fixed.gamma, job.n};
  double t = spec.fixed.t;
  const double blocks = static_cast<double>(job.n) + 1.0;

  PhaseCell cell;
  cell.n = job.n;
  for (std::size_t k = 0; k < spec.axes.size(); ++k) {
    const Axis& axis = spec.axes[k];
    const double v = axis.at(k == 0 ? job.i : job.j);
    cell.coords.emplace_back(std::string(to_string(axis.name)), v);
    switch (axis.name) {
      case AxisName::Gamma: p.gamma = v; break;
      case AxisName::Epsilon: p.epsilon = v; break;
      case AxisName::Omega: p.omega = v; break;
      case AxisName::Delta: p.gamma = v / std::sqrt(blocks); break;
      case AxisName::DeltaSq: p.gamma = std::sqrt(v / blocks); break;
      case AxisName::Time: t = v; break;
    }
  }

  cell.phase = model::classify_phase(p);
  cell.eigenvalues = model::spectrum_closed_form(p);
  const bool at_ep = cell.phase.value == Phase::ExceptionalPoint;

  auto put = [&](const char* name, Extra value) { cell.extras.emplace_back(name, value); };

  if (spec.wants(Quantity::MetricNorm)) {
    put("metric_norm", at_ep ? Extra{} : Extra{biortho::metric(p).entries.norm()});
  }
  if (spec.wants(Quantity::Entropy)) {
    put("entropy_I", at_ep ? Extra{} : Extra{entropy::entanglement_entropy(p, Branch::I)});
    put("entropy_II", at_ep ? Extra{} : Extra{entropy::entanglement_entropy(p, Branch::II)});
  }
  if (spec.wants(Quantity::Survival) || spec.wants(Quantity::Bloch)) {
    std::optional<dynamics::BlochState> state;
    if (!at_ep) {
      dynamics::BlochState rho0;
      rho0.r = spec.fixed.initial_bloch;
      state = dynamics::evolve_no_jump(dynamics::effective_generator(p), rho0, t);
    }
    if (spec.wants(Quantity::Survival)) {
      put("survival", state ? Extra{state->weight} : Extra{});
    }
    if (spec.wants(Quantity::Bloch)) {
      put("bloch_x", state ? Extra{state->r[0]} : Extra{});
      put("bloch_y", state ? Extra{state->r[1]} : Extra{});
      put("bloch_z", state ? Extra{state->r[2]} : Extra{});
    }
  }
  return cell;
}

}  // namespace

std::string_view to_string(AxisName name) noexcept {
  switch (name) {
    case AxisName::Gamma: return "gamma";
    case AxisName::Epsilon: return "epsilon";
    case AxisName::Omega: return "omega";
    case AxisName::Delta: return "delta";
    case AxisName::DeltaSq: return "delta_sq";
    case AxisName::Time: return "t";
  }
  return "unknown";
}

std::optional<AxisName> parse_axis_name(std::string_view text) noexcept {
  for (const AxisName a : {AxisName::Gamma, AxisName::Epsilon, AxisName::Omega, AxisName::Delta,
                           AxisName::DeltaSq, AxisName::Time}) {
    if (text == to_string(a)) return a;
  }
  return std::nullopt;
}

double Axis::at(int i) const noexcept {
  if (i >= steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

Axis parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 4) {
    throw SpecValidationError("grid", "expected AXIS:MIN:MAX:STEPS, got '" + std::string(text) + "'");
  }
  Axis axis;
  const auto name = parse_axis_name(parts[0]);
  if (!name) {
    throw SpecValidationError("grid.name", "unknown axis '" + std::string(parts[0]) +
                                               "' (expected gamma, epsilon, omega, delta, delta_sq or t)");
  }
  axis.name = *name;
  axis.min = parse_double(parts[1], "grid.min");
  axis.max = parse_double(parts[2], "grid.max");
  const double steps = parse_double(parts[3], "grid.steps");
  if (steps != std::floor(steps) || steps < 0 || steps > 1e8) {
    throw SpecValidationError("grid.steps", "expected a non-negative integer");
  }
  axis.steps = static_cast<int>(steps);
  return axis;
}

std::string_view to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::Eigenvalues: return "eigenvalues";
    case Quantity::Phase: return "phase";
    case Quantity::MetricNorm: return "metric_norm";
    case Quantity::Entropy: return "entropy";
    case Quantity::Survival: return "survival";
    case Quantity::Bloch: return "bloch";
  }
  return "unknown";
}

std::optional<Quantity> parse_quantity(std::string_view text) noexcept {
  for (const Quantity q : {Quantity::Eigenvalues, Quantity::Phase, Quantity::MetricNorm, Quantity::Entropy,
                           Quantity::Survival, Quantity::Bloch}) {
    if (text == to_string(q)) return q;
  }
  return std::nullopt;
}

void SweepSpec::validate() const {
  auto finite = [](double v, const char* field) {
    if (!std::isfinite(v)) throw SpecValidationError(field, "must be finite");
  };
  finite(fixed.omega, "fixed.omega");
  finite(fixed.epsilon, "fixed.epsilon");
  finite(fixed.gamma, "fixed.gamma");
  finite(fixed.t, "fixed.t");
  if (fixed.t < 0.0) throw SpecValidationError("fixed.t", "must be >= 0");
  const auto& r = fixed.initial_bloch;
  for (const double c : r) finite(c, "fixed.initial_state");
  if (std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]) > 1.0 + 1e-12) {
    throw SpecValidationError("fixed.initial_state", "Bloch vector must have length <= 1");
  }

  if (axes.empty() || axes.size() > 2) {
    throw SpecValidationError("axes", "expected one or two axes, got " + std::to_string(axes.size()));
  }
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const Axis& a = axes[k];
    const std::string field = "axes[" + std::to_string(k) + "]";
    if (a.steps < 2) throw SpecValidationError(field + ".steps", "must be >= 2");
    if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw SpecValidationError(field, "bounds must be finite");
    if (!(a.min < a.max)) throw SpecValidationError(field + ".min", "must be < max");
    if ((a.name == AxisName::DeltaSq || a.name == AxisName::Time) && a.min < 0.0) {
      throw SpecValidationError(field + ".min", std::string(to_string(a.name)) + " must be >= 0");
    }
  }
  if (axes.size() == 2) {
    if (axes[0].name == axes[1].name) throw SpecValidationError("axes[1].name", "duplicates axes[0]");
    if (sets_coupling(axes[0].name) && sets_coupling(axes[1].name)) {
      throw SpecValidationError("axes[1].name", "gamma, delta and delta_sq all set the coupling; pick one");
    }
  }
  if (quantities.empty()) throw SpecValidationError("quantities", "request at least one quantity");
}

std::vector<unsigned> SweepSpec::blocks() const {
  return n_list.empty() ? std::vector<unsigned>{fixed.n} : n_list;
}

bool SweepSpec::wants(Quantity q) const noexcept {
  return std::find(quantities.begin(), quantities.end(), q) != quantities.end();
}

std::vector<std::string_view> preset_names() { return {"fig1", "fig2a", "fig2b", "fig2c", "fig2d", "fig3"}; }

SweepSpec preset(std::string_view name) {
  SweepSpec spec;
  spec.preset = std::string(name);
  spec.fixed.omega = 1.0;
  spec.fixed.epsilon = 5.0;
  if (name == "fig1") {
    spec.axes = {{AxisName::Delta, 0.0, 4.0, 400}};
    spec.quantities = {Quantity::Eigenvalues, Quantity::Phase};
  } else if (name.size() == 5 && name.substr(0, 4) == "fig2" && name[4] >= 'a' && name[4] <= 'd') {
    spec.fixed.n = static_cast<unsigned>(name[4] - 'a');
    spec.axes = {{AxisName::Gamma, 0.0, 3.0, 200}, {AxisName::Epsilon, -5.0, 7.0, 200}};
    spec.quantities = {Quantity::Phase};
  } else if (name == "fig3") {
    spec.axes = {{AxisName::DeltaSq, 0.01, 16.0, 500}};
    spec.quantities = {Quantity::Entropy};
  } else {
    throw SpecValidationError("preset", "unknown preset '" + std::string(name) +
                                            "' (expected fig1, fig2a, fig2b, fig2c, fig2d or fig3)");
  }
  return spec;
}

std::vector<std::string> extra_columns(const SweepSpec& spec) {
  std::vector<std::string> out;
  if (spec.wants(Quantity::MetricNorm)) out.emplace_back("metric_norm");
  if (spec.wants(Quantity::Entropy)) {
    out.emplace_back("entropy_I");
    out.emplace_back("entropy_II");
  }
  if (spec.wants(Quantity::Survival)) out.emplace_back("survival");
  if (spec.wants(Quantity::Bloch)) {
    out.emplace_back("bloch_x");
    out.emplace_back("bloch_y");
    out.emplace_back("bloch_z");
  }
  return out;
}

std::vector<PhaseCell> run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const int n1 = spec.axes[0].steps;
  const int n2 = spec.axes.size() > 1 ? spec.axes[1].steps : 1;

  std::vector<CellJob> jobs;
  for (const unsigned n : spec.blocks()) {
    for (int j = 0; j < n2; ++j) {
      for (int i = 0; i < n1; ++i) {
        jobs.push_back({n, i, j});
      }
    }
  }

  std::vector<PhaseCell> cells(jobs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size() / 256)));

  if (threads <= 1) {
    for (std::size_t k = 0; k < jobs.size(); ++k) cells[k] = evaluate(spec, jobs[k]);
    return cells;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      constexpr std::size_t kChunk = 64;
      while (!failed.load()) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= jobs.size()) break;
        const std::size_t end = std::min(jobs.size(), begin + kChunk);
        try {
          for (std::size_t k = begin; k < end; ++k) cells[k] = evaluate(spec, jobs[k]);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return cells;
}

}  // namespace nhjc::scan
