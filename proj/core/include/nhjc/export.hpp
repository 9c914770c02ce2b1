#pragma once

#include "nhjc/scan.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace nhjc::scan {

// CSV: header row, one row per cell, complex values split into _re/_im,
// doubles printed with 17 significant digits, empty field for missing extras.
void write_csv(std::span<const PhaseCell> cells, std::ostream& out);
void export_csv(std::span<const PhaseCell> cells, const std::filesystem::path& path);
std::vector<PhaseCell> read_csv(std::istream& in);

// JSON: {"meta": <spec>, "cells": [ {field: value, ...}, ... ]} with the same
// field names as the CSV header; missing extras are null.
void write_json(std::span<const PhaseCell> cells, const SweepSpec& spec, std::ostream& out);
void export_json(std::span<const PhaseCell> cells, const SweepSpec& spec, const std::filesystem::path& path);

struct SweepDocument {
  SweepSpec spec;
  std::vector<PhaseCell> cells;
};
SweepDocument read_json(std::istream& in);

enum class PlotKind { Auto, Line, PhaseMap };

/// Self-contained SVG 1.1: a line plot for 1-D sweeps, a two-colour raster
/// (one panel per block) for 2-D sweeps.
void write_svg(std::span<const PhaseCell> cells, const SweepSpec& spec, std::ostream& out,
               PlotKind kind = PlotKind::Auto);
void render_svg(std::span<const PhaseCell> cells, const SweepSpec& spec, const std::filesystem::path& path,
                PlotKind kind = PlotKind::Auto);

// Config files mirror SweepSpec:
//   {"fixed": {"omega", "epsilon", "gamma", "n", "t", "initial_state"},
//    "axes": [{"name", "min", "max", "steps"}], "quantities": [...],
//    "n_list": [...], "preset": "fig3"}
// A preset, when named, is applied first and the remaining fields overlay it.
SweepSpec parse_config(const std::string& json_text, SweepSpec base = {});
SweepSpec load_config(const std::filesystem::path& path, SweepSpec base = {});
std::string spec_to_json(const SweepSpec& spec);

}  // namespace nhjc::scan
