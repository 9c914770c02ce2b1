#include "nhjc/errors.hpp"
#include "nhjc/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <string>

namespace nhjc::scan {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kUnbrokenFill = "#191970";
constexpr const char* kBrokenFill = "#a9a9a9";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;          // data ranges
  double left, top, width, height;  // pixel box

  double px(double x) const { return left + (x - x0) / (x1 - x0) * width; }
  double py(double y) const { return top + height - (y - y0) / (y1 - y0) * height; }
};

struct Series {
  std::string label;
  std::string colour;
  std::string dash;  // empty: solid
  double stroke = 2.0;
  std::vector<std::pair<double, std::optional<double>>> points;
};

void header(std::ostream& out, double width, double height) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(width) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" fill=\"white\"/>\n";
}

void axes_box(std::ostream& out, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  out << "<rect x=\"" << fmt(f.left) << "\" y=\"" << fmt(f.top) << "\" width=\"" << fmt(f.width) << "\" height=\""
      << fmt(f.height) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = f.x0 + (f.x1 - f.x0) * k / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * k / 4.0;
    const double x = f.px(xv);
    const double y = f.py(yv);
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(f.top + f.height) << "\" x2=\"" << fmt(x) << "\" y2=\""
        << fmt(f.top + f.height + 5) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(f.top + f.height + 20) << "\" text-anchor=\"middle\">"
        << tick_label(xv) << "</text>\n";
    out << "<line x1=\"" << fmt(f.left - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(f.left) << "\" y2=\""
        << fmt(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(f.left - 8) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">"
        << tick_label(yv) << "</text>\n";
  }
  out << "<text x=\"" << fmt(f.left + f.width / 2) << "\" y=\"" << fmt(f.top + f.height + 42)
      << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  out << "<text x=\"" << fmt(f.left - 50) << "\" y=\"" << fmt(f.top + f.height / 2) << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 " << fmt(f.left - 50) << ' ' << fmt(f.top + f.height / 2) << ")\">" << ylabel
      << "</text>\n";
  out << "</g>\n";
}

std::optional<double> extra(const PhaseCell& c, const std::string& name) {
  for (const auto& [key, v] : c.extras) {
    if (key == name) return v;
  }
  return std::nullopt;
}

std::vector<Series> line_series(std::span<const PhaseCell> cells, const SweepSpec& spec, unsigned n,
                                bool many_blocks) {
  std::vector<Series> out;
  const std::string suffix = many_blocks ? " (n=" + std::to_string(n) + ")" : "";
  auto add = [&](std::string label, std::string colour, std::string dash, double stroke, auto getter) {
    Series s{std::move(label) + suffix, std::move(colour), std::move(dash), stroke, {}};
    for (const PhaseCell& c : cells) {
      if (c.n == n) s.points.emplace_back(c.coords.front().second, getter(c));
    }
    out.push_back(std::move(s));
  };
  using Opt = std::optional<double>;
  if (spec.wants(Quantity::Eigenvalues)) {
    add("Re R_I", "#ff7f0e", "", 2.0, [](const PhaseCell& c) { return Opt{c.eigenvalues.eigenvalue_I.real()}; });
    add("Re R_II", "#000000", "6,4", 2.0, [](const PhaseCell& c) { return Opt{c.eigenvalues.eigenvalue_II.real()}; });
    add("Im R_I", "#ff7f0e", "2,3", 1.2, [](const PhaseCell& c) { return Opt{c.eigenvalues.eigenvalue_I.imag()}; });
    add("Im R_II", "#000000", "2,3", 1.2, [](const PhaseCell& c) { return Opt{c.eigenvalues.eigenvalue_II.imag()}; });
  }
  if (spec.wants(Quantity::MetricNorm)) {
    add("||G||_F", "#6a3d9a", "", 2.0, [](const PhaseCell& c) { return extra(c, "metric_norm"); });
  }
  if (spec.wants(Quantity::Entropy)) {
    add("S_I", "#ff7f0e", "", 2.0, [](const PhaseCell& c) { return extra(c, "entropy_I"); });
    add("S_II", "#000000", "2,4", 2.0, [](const PhaseCell& c) { return extra(c, "entropy_II"); });
  }
  if (spec.wants(Quantity::Survival)) {
    add("D(t)", "#d62728", "", 2.0, [](const PhaseCell& c) { return extra(c, "survival"); });
  }
  if (spec.wants(Quantity::Bloch)) {
    add("r_x", "#1f77b4", "", 1.5, [](const PhaseCell& c) { return extra(c, "bloch_x"); });
    add("r_y", "#2ca02c", "", 1.5, [](const PhaseCell& c) { return extra(c, "bloch_y"); });
    add("r_z", "#9467bd", "", 1.5, [](const PhaseCell& c) { return extra(c, "bloch_z"); });
  }
  if (out.empty()) {
    add("discriminant", "#1f77b4", "", 2.0, [](const PhaseCell& c) { return Opt{c.phase.discriminant}; });
  }
  return out;
}

// Abscissae where the discriminant changes sign between neighbouring cells.
std::vector<double> transitions(std::span<const PhaseCell> cells, unsigned n) {
  std::vector<double> xs;
  const PhaseCell* prev = nullptr;
  for (const PhaseCell& c : cells) {
    if (c.n != n) continue;
    if (c.phase.value == Phase::ExceptionalPoint) {
      xs.push_back(c.coords.front().second);
    } else if (prev && prev->phase.value != Phase::ExceptionalPoint && prev->phase.value != c.phase.value) {
      const double d0 = prev->phase.discriminant;
      const double d1 = c.phase.discriminant;
      const double x0 = prev->coords.front().second;
      const double x1 = c.coords.front().second;
      xs.push_back(x0 + (x1 - x0) * d0 / (d0 - d1));
    }
    prev = &c;
  }
  return xs;
}

void line_plot(std::span<const PhaseCell> cells, const SweepSpec& spec, std::ostream& out) {
  std::vector<unsigned> blocks;
  for (const PhaseCell& c : cells) {
    if (std::find(blocks.begin(), blocks.end(), c.n) == blocks.end()) blocks.push_back(c.n);
  }
  std::vector<Series> series;
  for (const unsigned n : blocks) {
    auto part = line_series(cells, spec, n, blocks.size() > 1);
    series.insert(series.end(), part.begin(), part.end());
  }

  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  double y0 = x0;
  double y1 = -x0;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      if (y && std::isfinite(*y)) {
        y0 = std::min(y0, *y);
        y1 = std::max(y1, *y);
      }
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!std::isfinite(y0)) {
    y0 = 0.0;
    y1 = 1.0;
  }
  if (!(y1 > y0)) {
    y0 -= 1.0;
    y1 += 1.0;
  }
  const double pad = 0.05 * (y1 - y0);
  const Frame f{x0, x1, y0 - pad, y1 + pad, kLeft, kTop, kWidth - kLeft - kRight, kHeight - kTop - kBottom};

  header(out, kWidth, kHeight);
  out << "<defs><clipPath id=\"plot\"><rect x=\"" << fmt(f.left) << "\" y=\"" << fmt(f.top) << "\" width=\""
      << fmt(f.width) << "\" height=\"" << fmt(f.height) << "\"/></clipPath></defs>\n";
  const std::string xlabel = spec.axes.empty() ? "x" : std::string(to_string(spec.axes.front().name));
  axes_box(out, f, xlabel, "value");

  out << "<g clip-path=\"url(#plot)\" fill=\"none\">\n";
  for (const unsigned n : blocks) {
    for (const double x : transitions(cells, n)) {
      out << "<line x1=\"" << fmt(f.px(x)) << "\" y1=\"" << fmt(f.top) << "\" x2=\"" << fmt(f.px(x)) << "\" y2=\""
          << fmt(f.top + f.height) << "\" stroke=\"#1f77b4\" stroke-dasharray=\"8,5\" stroke-width=\"1.5\"/>\n";
    }
  }
  for (const Series& s : series) {
    std::string path;
    bool pen_down = false;
    for (const auto& [x, y] : s.points) {
      if (!y || !std::isfinite(*y)) {
        pen_down = false;
        continue;
      }
      path += pen_down ? " L" : (path.empty() ? "M" : " M");
      path += fmt(f.px(x)) + ',' + fmt(f.py(*y));
      pen_down = true;
    }
    if (path.empty()) continue;
    out << "<path d=\"" << path << "\" stroke=\"" << s.colour << "\" stroke-width=\"" << fmt(s.stroke) << '"';
    if (!s.dash.empty()) out << " stroke-dasharray=\"" << s.dash << '"';
    out << "/>\n";
  }
  out << "</g>\n";

  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = f.top + 10;
  for (const Series& s : series) {
    const double lx = f.left + f.width + 15;
    out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 30) << "\" y2=\"" << fmt(ly)
        << "\" stroke=\"" << s.colour << "\" stroke-width=\"" << fmt(s.stroke) << '"';
    if (!s.dash.empty()) out << " stroke-dasharray=\"" << s.dash << '"';
    out << "/>\n<text x=\"" << fmt(lx + 36) << "\" y=\"" << fmt(ly + 4) << "\">" << s.label << "</text>\n";
    ly += 18;
  }
  out << "</g>\n</svg>\n";
}

void phase_map(std::span<const PhaseCell> cells, const SweepSpec& spec, std::ostream& out) {
  if (spec.axes.size() != 2) throw SpecValidationError("axes", "a phase map needs two axes");
  const Axis& ax = spec.axes[0];
  const Axis& ay = spec.axes[1];

  std::vector<unsigned> blocks;
  for (const PhaseCell& c : cells) {
    if (std::find(blocks.begin(), blocks.end(), c.n) == blocks.end()) blocks.push_back(c.n);
  }
  constexpr double kPanel = 360.0;
  constexpr double kGap = 90.0;
  const double width = kLeft + blocks.size() * (kPanel + kGap);
  const double height = kTop + kPanel + kBottom + 20;
  header(out, width, height);

  const bool overlay = (ax.name == AxisName::Gamma && ay.name == AxisName::Epsilon) ||
                       (ax.name == AxisName::Epsilon && ay.name == AxisName::Gamma);
  const double cw = kPanel / (ax.steps - 1);
  const double ch = kPanel / (ay.steps - 1);

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const unsigned n = blocks[b];
    const Frame f{ax.min, ax.max, ay.min, ay.max, kLeft + b * (kPanel + kGap), kTop, kPanel, kPanel};
    out << "<defs><clipPath id=\"panel" << b << "\"><rect x=\"" << fmt(f.left) << "\" y=\"" << fmt(f.top)
        << "\" width=\"" << fmt(f.width) << "\" height=\"" << fmt(f.height) << "\"/></clipPath></defs>\n";
    out << "<g clip-path=\"url(#panel" << b << ")\" shape-rendering=\"crispEdges\">\n";
    for (const PhaseCell& c : cells) {
      if (c.n != n || c.coords.size() < 2) continue;
      const char* fill = c.phase.value == Phase::Unbroken ? kUnbrokenFill : kBrokenFill;
      out << "<rect x=\"" << fmt(f.px(c.coords[0].second) - cw / 2) << "\" y=\"" << fmt(f.py(c.coords[1].second) - ch / 2)
          << "\" width=\"" << fmt(cw + 0.05) << "\" height=\"" << fmt(ch + 0.05) << "\" fill=\"" << fill << "\"/>\n";
    }
    if (overlay) {
      // Exceptional points: epsilon = omega +- 2 gamma sqrt(n+1).
      const Axis& coupling = ax.name == AxisName::Gamma ? ax : ay;
      const double root = 2.0 * std::sqrt(static_cast<double>(n) + 1.0);
      for (const double sign : {1.0, -1.0}) {
        std::string pts;
        for (int k = 0; k <= 200; ++k) {
          const double g = coupling.min + (coupling.max - coupling.min) * k / 200.0;
          const double e = spec.fixed.omega + sign * root * g;
          const double x = ax.name == AxisName::Gamma ? g : e;
          const double y = ax.name == AxisName::Gamma ? e : g;
          if (!pts.empty()) pts += ' ';
          pts += fmt(f.px(x)) + ',' + fmt(f.py(y));
        }
        out << "<polyline points=\"" << pts
            << "\" fill=\"none\" stroke=\"white\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
      }
    }
    out << "</g>\n";
    axes_box(out, f, std::string(to_string(ax.name)), std::string(to_string(ay.name)));
    out << "<text x=\"" << fmt(f.left + f.width / 2) << "\" y=\"" << fmt(f.top - 12)
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">n = " << n << "</text>\n";
  }

  const double ly = height - 14;
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(ly - 10) << "\" width=\"12\" height=\"12\" fill=\""
      << kUnbrokenFill << "\"/><text x=\"" << fmt(kLeft + 18) << "\" y=\"" << fmt(ly) << "\">unbroken</text>\n"
      << "<rect x=\"" << fmt(kLeft + 100) << "\" y=\"" << fmt(ly - 10) << "\" width=\"12\" height=\"12\" fill=\""
      << kBrokenFill << "\"/><text x=\"" << fmt(kLeft + 118) << "\" y=\"" << fmt(ly) << "\">broken</text>\n"
      << "</g>\n</svg>\n";
}

}  // namespace

void write_svg(std::span<const PhaseCell> cells, const SweepSpec& spec, std::ostream& out, PlotKind kind) {
  if (cells.empty()) throw EmptySweep("refusing to plot an empty sweep");
  if (kind == PlotKind::Auto) kind = spec.axes.size() == 2 ? PlotKind::PhaseMap : PlotKind::Line;
  if (kind == PlotKind::PhaseMap) {
    phase_map(cells, spec, out);
  } else {
    line_plot(cells, spec, out);
  }
}

void render_svg(std::span<const PhaseCell> cells, const SweepSpec& spec, const std::filesystem::path& path,
                PlotKind kind) {
  if (cells.empty()) throw EmptySweep("refusing to plot an empty sweep");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_svg(cells, spec, out, kind);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace nhjc::scan
