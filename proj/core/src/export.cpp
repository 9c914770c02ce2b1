#include "nhjc/export.hpp"

#include "nhjc/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace nhjc::scan {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kFixedColumns[] = {"n", "phase", "discriminant", "eig_I_re", "eig_I_im", "eig_II_re",
                                         "eig_II_im"};

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one CSV record; quoted fields may contain separators and doubled quotes.
std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

double parse_number(const std::string& text, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw SpecValidationError("csv line " + std::to_string(line), "malformed number '" + text + "'");
  }
  return v;
}

Phase parse_phase(const std::string& text, const std::string& where) {
  for (const Phase p : {Phase::Unbroken, Phase::Broken, Phase::ExceptionalPoint}) {
    if (text == to_string(p)) return p;
  }
  throw SpecValidationError(where, "unknown phase '" + text + "'");
}

void require_cells(std::span<const PhaseCell> cells) {
  if (cells.empty()) throw EmptySweep("refusing to export an empty sweep");
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

void write_csv(std::span<const PhaseCell> cells, std::ostream& out) {
  require_cells(cells);
  const PhaseCell& first = cells.front();
  std::string header;
  auto add = [&](const std::string& name) {
    if (!header.empty()) header += ',';
    header += csv_field(name);
  };
  for (const auto& [name, v] : first.coords) add(name);
  for (const char* name : kFixedColumns) add(name);
  for (const auto& [name, v] : first.extras) add(name);
  out << header << '\n';

  std::string row;
  for (const PhaseCell& c : cells) {
    row.clear();
    bool lead = true;
    auto col = [&](const std::string& field) {
      if (!lead) row += ',';
      lead = false;
      row += csv_field(field);
    };
    for (const auto& [name, v] : c.coords) col(format_double(v));
    col(std::to_string(c.n));
    col(std::string(to_string(c.phase.value)));
    col(format_double(c.phase.discriminant));
    col(format_double(c.eigenvalues.eigenvalue_I.real()));
    col(format_double(c.eigenvalues.eigenvalue_I.imag()));
    col(format_double(c.eigenvalues.eigenvalue_II.real()));
    col(format_double(c.eigenvalues.eigenvalue_II.imag()));
    for (const auto& [name, v] : c.extras) col(v ? format_double(*v) : std::string());
    out << row << '\n';
  }
}

void export_csv(std::span<const PhaseCell> cells, const std::filesystem::path& path) {
  require_cells(cells);
  std::ofstream out = open_for_write(path);
  write_csv(cells, out);
  finish(out, path);
}

std::vector<PhaseCell> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SpecValidationError("csv", "missing header row");
  const std::vector<std::string> header = split_record(line);

  std::size_t first_fixed = header.size();
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == kFixedColumns[0]) {
      first_fixed = k;
      break;
    }
  }
  constexpr std::size_t kFixedCount = std::size(kFixedColumns);
  if (first_fixed + kFixedCount > header.size()) throw SpecValidationError("csv", "header lacks the cell columns");
  for (std::size_t k = 0; k < kFixedCount; ++k) {
    if (header[first_fixed + k] != kFixedColumns[k]) {
      throw SpecValidationError("csv", "expected column '" + std::string(kFixedColumns[k]) + "'");
    }
  }

  std::vector<PhaseCell> cells;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_record(line);
    if (f.size() != header.size()) {
      throw SpecValidationError("csv line " + std::to_string(lineno), "wrong number of fields");
    }
    PhaseCell c;
    for (std::size_t k = 0; k < first_fixed; ++k) c.coords.emplace_back(header[k], parse_number(f[k], lineno));
    const std::size_t b = first_fixed;
    c.n = static_cast<unsigned>(parse_number(f[b], lineno));
    c.phase.value = parse_phase(f[b + 1], "csv line " + std::to_string(lineno));
    c.phase.discriminant = parse_number(f[b + 2], lineno);
    c.eigenvalues.eigenvalue_I = {parse_number(f[b + 3], lineno), parse_number(f[b + 4], lineno)};
    c.eigenvalues.eigenvalue_II = {parse_number(f[b + 5], lineno), parse_number(f[b + 6], lineno)};
    for (std::size_t k = b + kFixedCount; k < header.size(); ++k) {
      c.extras.emplace_back(header[k], f[k].empty() ? Extra{} : Extra{parse_number(f[k], lineno)});
    }
    cells.push_back(std::move(c));
  }
  return cells;
}

void write_json(std::span<const PhaseCell> cells, const SweepSpec& spec, std::ostream& out) {
  require_cells(cells);
  ordered_json doc;
  doc["meta"] = ordered_json::parse(spec_to_json(spec));
  ordered_json rows = ordered_json::array();
  for (const PhaseCell& c : cells) {
    ordered_json row;
    for (const auto& [name, v] : c.coords) row[name] = v;
    row["n"] = c.n;
    row["phase"] = std::string(to_string(c.phase.value));
    row["discriminant"] = c.phase.discriminant;
    row["eig_I_re"] = c.eigenvalues.eigenvalue_I.real();
    row["eig_I_im"] = c.eigenvalues.eigenvalue_I.imag();
    row["eig_II_re"] = c.eigenvalues.eigenvalue_II.real();
    row["eig_II_im"] = c.eigenvalues.eigenvalue_II.imag();
    for (const auto& [name, v] : c.extras) row[name] = v ? ordered_json(*v) : ordered_json(nullptr);
    rows.push_back(std::move(row));
  }
  doc["cells"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void export_json(std::span<const PhaseCell> cells, const SweepSpec& spec, const std::filesystem::path& path) {
  require_cells(cells);
  std::ofstream out = open_for_write(path);
  write_json(cells, spec, out);
  finish(out, path);
}

SweepDocument read_json(std::istream& in) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SpecValidationError("json", e.what());
  }
  if (!doc.is_object() || !doc.contains("meta") || !doc.contains("cells") || !doc["cells"].is_array()) {
    throw SpecValidationError("json", "expected an object with 'meta' and 'cells'");
  }
  SweepDocument out;
  out.spec = parse_config(doc["meta"].dump());

  std::size_t index = 0;
  for (const auto& row : doc["cells"]) {
    const std::string where = "cells[" + std::to_string(index++) + "]";
    if (!row.is_object() || !row.contains("n")) throw SpecValidationError(where, "expected a cell object");
    try {
      PhaseCell c;
      bool seen_n = false;
      bool past_eigen = false;
      for (const auto& [key, value] : row.items()) {
        if (key == "n") {
          seen_n = true;
          c.n = value.get<unsigned>();
        } else if (!seen_n) {
          c.coords.emplace_back(key, value.get<double>());
        } else if (key == "phase") {
          c.phase.value = parse_phase(value.get<std::string>(), where + ".phase");
        } else if (key == "discriminant") {
          c.phase.discriminant = value.get<double>();
        } else if (key == "eig_I_re") {
          c.eigenvalues.eigenvalue_I.real(value.get<double>());
        } else if (key == "eig_I_im") {
          c.eigenvalues.eigenvalue_I.imag(value.get<double>());
        } else if (key == "eig_II_re") {
          c.eigenvalues.eigenvalue_II.real(value.get<double>());
        } else if (key == "eig_II_im") {
          c.eigenvalues.eigenvalue_II.imag(value.get<double>());
          past_eigen = true;
        } else if (past_eigen) {
          c.extras.emplace_back(key, value.is_null() ? Extra{} : Extra{value.get<double>()});
        } else {
          throw SpecValidationError(where, "unexpected field '" + key + "'");
        }
      }
      out.cells.push_back(std::move(c));
    } catch (const nlohmann::json::exception& e) {
      throw SpecValidationError(where, e.what());
    }
  }
  return out;
}

}  // namespace nhjc::scan
