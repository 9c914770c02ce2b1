#include "nhjc/cli.hpp"

#include "nhjc/biortho.hpp"
#include "nhjc/dynamics.hpp"
#include "nhjc/errors.hpp"
#include "nhjc/export.hpp"
#include "nhjc/model.hpp"
#include "nhjc/scan.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

namespace nhjc::cli {
namespace {

struct Options {
  double omega = 1.0;
  double epsilon = 5.0;
  double gamma = 0.0;
  unsigned n = 0;
  std::vector<unsigned> n_list;
  double t = 0.0;
  std::string bloch;
  std::vector<std::string> grids;
  std::string out_path;
  std::string format;
  std::string config;
  std::string preset;
  std::string side = "both";
  unsigned threads = 0;
  bool point = false;
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

scan::SweepSpec defaults_for(const std::string& sub) {
  using scan::AxisName;
  using scan::Quantity;
  scan::SweepSpec spec;
  if (sub == "spectrum") {
    spec = scan::preset("fig1");
  } else if (sub == "phase-map") {
    spec = scan::preset("fig2a");
  } else if (sub == "entropy") {
    spec = scan::preset("fig3");
  } else if (sub == "metric") {
    spec.axes = {{AxisName::Delta, 0.0, 4.0, 400}};
  }
  spec.preset.clear();
  return spec;
}

std::vector<scan::Quantity> quantities_for(const std::string& sub) {
  using scan::Quantity;
  if (sub == "spectrum") return {Quantity::Eigenvalues, Quantity::Phase};
  if (sub == "phase-map") return {Quantity::Phase};
  if (sub == "metric") return {Quantity::MetricNorm};
  if (sub == "entropy") return {Quantity::Entropy};
  return {Quantity::Survival, Quantity::Bloch};
}

std::array<double, 3> parse_bloch(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  if (parts.size() != 3) throw SpecValidationError("bloch", "expected X,Y,Z, got '" + text + "'");
  std::array<double, 3> r{};
  for (std::size_t k = 0; k < 3; ++k) {
    try {
      std::size_t used = 0;
      r[k] = std::stod(parts[k], &used);
      if (used != parts[k].size()) throw std::invalid_argument(parts[k]);
    } catch (const std::exception&) {
      throw SpecValidationError("bloch", "expected X,Y,Z, got '" + text + "'");
    }
  }
  return r;
}

// Precedence: subcommand defaults < preset < config file < explicit flags.
scan::SweepSpec build_spec(const std::string& sub, const Options& o, const CLI::App& app) {
  scan::SweepSpec spec = defaults_for(sub);
  if (!o.preset.empty()) spec = scan::preset(o.preset);
  spec.quantities = quantities_for(sub);
  if (!o.config.empty()) spec = scan::load_config(o.config, spec);

  if (app.count("--omega")) spec.fixed.omega = o.omega;
  if (app.count("--epsilon")) spec.fixed.epsilon = o.epsilon;
  if (app.count("--gamma")) spec.fixed.gamma = o.gamma;
  if (app.count("--n")) {
    spec.fixed.n = o.n;
    spec.n_list.clear();
  }
  if (app.count("--n-list")) spec.n_list = o.n_list;
  if (app.count("--t")) spec.fixed.t = o.t;
  if (app.count("--bloch")) spec.fixed.initial_bloch = parse_bloch(o.bloch);
  if (!o.grids.empty()) {
    if (o.grids.size() > 2) throw SpecValidationError("grid", "at most two --grid axes");
    spec.axes.clear();
    for (const std::string& g : o.grids) spec.axes.push_back(scan::parse_grid(g));
  }

  if (spec.axes.empty() && sub == "dynamics") {
    const ModelParams p{spec.fixed.omega, spec.fixed.epsilon, spec.fixed.gamma, spec.fixed.n};
    const double horizon = dynamics::default_horizon(dynamics::effective_generator(p));
    spec.axes = {{scan::AxisName::Time, 0.0, horizon, 500}};
  }
  spec.validate();
  return spec;
}

std::string resolve_format(const Options& o) {
  if (!o.format.empty()) return o.format;
  auto ends_with = [&](const char* ext) {
    const std::string e(ext);
    return o.out_path.size() >= e.size() && o.out_path.compare(o.out_path.size() - e.size(), e.size(), e) == 0;
  };
  if (ends_with(".json")) return "json";
  if (ends_with(".svg")) return "svg";
  return "csv";
}

int run_sweep_command(const std::string& sub, const Options& o, const CLI::App& app, std::ostream& out) {
  const scan::SweepSpec spec = build_spec(sub, o, app);
  const std::vector<scan::PhaseCell> cells = scan::run_sweep(spec, o.threads);
  const std::string format = resolve_format(o);

  std::ostringstream buffer;
  if (format == "csv") {
    scan::write_csv(cells, buffer);
  } else if (format == "json") {
    scan::write_json(cells, spec, buffer);
  } else {
    scan::write_svg(cells, spec, buffer);
  }

  if (o.out_path.empty()) {
    out << buffer.str();
    return kExitOk;
  }
  std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + o.out_path + "' for writing");
  file << buffer.str();
  file.flush();
  if (!file) throw IoError("failed writing '" + o.out_path + "'");
  return kExitOk;
}

void print_matrix(std::ostream& out, const char* name, const Mat2& m) {
  out << name << " =\n";
  for (int r = 0; r < 2; ++r) {
    out << "  [";
    for (int c = 0; c < 2; ++c) {
      const Complex z = m(r, c);
      out << (c ? ", " : "") << format_number(z.real()) << (z.imag() < 0 ? " - " : " + ")
          << format_number(std::abs(z.imag())) << "i";
    }
    out << "]\n";
  }
}

int run_metric_point(const Options& o, const CLI::App& app, std::ostream& out) {
  const scan::SweepSpec spec = build_spec("metric", o, app);
  const ModelParams p{spec.fixed.omega, spec.fixed.epsilon, spec.fixed.gamma, spec.fixed.n};
  const biortho::MetricBundle bundle = biortho::intertwiner(p);
  out << "phase = " << to_string(bundle.phase.value) << " (discriminant " << format_number(bundle.phase.discriminant)
      << ")\n";
  print_matrix(out, "H", model::build_block(p).entries);
  print_matrix(out, "G", bundle.G.entries);
  print_matrix(out, "g", bundle.g.entries);
  print_matrix(out, "g_inv", bundle.g_inv.entries);
  print_matrix(out, "h", bundle.h.entries);
  return kExitOk;
}

int run_exponent(const Options& o, const CLI::App& app, std::ostream& out) {
  scan::SweepSpec spec = defaults_for("exponent");
  spec.quantities = {scan::Quantity::MetricNorm};
  spec.axes = {{scan::AxisName::Delta, 0.0, 1.0, 2}};
  if (!o.config.empty()) spec = scan::load_config(o.config, spec);
  if (app.count("--omega")) spec.fixed.omega = o.omega;
  if (app.count("--epsilon")) spec.fixed.epsilon = o.epsilon;
  if (app.count("--n")) {
    spec.fixed.n = o.n;
    spec.n_list.clear();
  }
  if (app.count("--n-list")) spec.n_list = o.n_list;

  std::vector<biortho::Side> sides;
  if (o.side == "below" || o.side == "both") sides.push_back(biortho::Side::Below);
  if (o.side == "above" || o.side == "both") sides.push_back(biortho::Side::Above);

  for (const unsigned n : spec.blocks()) {
    const ModelParams p{spec.fixed.omega, spec.fixed.epsilon, 0.0, n};
    for (const biortho::Side side : sides) {
      const double slope = biortho::metric_divergence_exponent(p, side);
      out << "side=" << (side == biortho::Side::Below ? "below" : "above") << " n=" << n
          << " delta_c=" << format_number(0.5 * std::abs(p.omega - p.epsilon)) << " slope=" << format_number(slope)
          << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int cli_main(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-Hermitian Jaynes-Cummings blocks: spectra, phases, metrics, dynamics and entropy", "nhjc"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--omega", o.omega, "Oscillator frequency");
  app.add_option("--epsilon", o.epsilon, "Two-level splitting");
  app.add_option("--gamma", o.gamma, "Non-Hermitian coupling");
  app.add_option("--n", o.n, "Block index");
  app.add_option("--n-list", o.n_list, "Several block indices")->delimiter(',');
  app.add_option("--t", o.t, "Evolution time when t is not a sweep axis");
  app.add_option("--bloch", o.bloch, "Initial Bloch vector X,Y,Z for dynamics");
  app.add_option("--grid", o.grids, "Sweep axis AXIS:MIN:MAX:STEPS (gamma, epsilon, omega, delta, delta_sq, t)")
      ->take_all();
  app.add_option("--out", o.out_path, "Output file (default: stdout)");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--config", o.config, "JSON sweep description; flags override its values");
  app.add_option("--preset", o.preset, "fig1, fig2a, fig2b, fig2c, fig2d or fig3");
  app.add_option("--threads", o.threads, "Worker threads (0: all cores)");

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"spectrum", "Closed-form eigenvalues along a sweep"},
      {"phase-map", "Unbroken/broken phase raster"},
      {"metric", "Frobenius norm of the metric G along a sweep"},
      {"entropy", "Spin-oscillator entanglement entropy"},
      {"dynamics", "No-jump survival probability and Bloch vector"},
      {"exponent", "Fit the divergence exponent of the metric at the exceptional point"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);
  app.get_subcommand("metric")->add_flag("--point", o.point, "Print G, g, g^-1 and h at the given parameters");
  app.get_subcommand("exponent")
      ->add_option("--side", o.side, "below, above or both")
      ->check(CLI::IsMember({"below", "above", "both"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    if (sub == "exponent") return run_exponent(o, app, out);
    if (sub == "metric" && o.point) return run_metric_point(o, app, out);
    return run_sweep_command(sub, o, app, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace nhjc::cli
