#include "nhjc/errors.hpp"
#include "nhjc/export.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace nhjc::scan {
namespace {

using ordered_json = nlohmann::ordered_json;

double number_at(const ordered_json& obj, const char* key, const std::string& field) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw SpecValidationError(field, "expected a number");
  return v.get<double>();
}

unsigned block_index(const ordered_json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw SpecValidationError(field, "expected a non-negative integer");
  }
  return v.get<unsigned>();
}

}  // namespace

SweepSpec parse_config(const std::string& json_text, SweepSpec base) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw SpecValidationError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpecValidationError("config", "expected a JSON object");

  for (const auto& [key, value] : doc.items()) {
    if (key != "fixed" && key != "axes" && key != "quantities" && key != "n_list" && key != "preset") {
      throw SpecValidationError(key, "unknown config field");
    }
  }

  SweepSpec spec = std::move(base);
  if (doc.contains("preset") && spec.preset.empty()) {
    if (!doc["preset"].is_string()) throw SpecValidationError("preset", "expected a string");
    spec = preset(doc["preset"].get<std::string>());
  }

  if (doc.contains("fixed")) {
    const auto& fixed = doc["fixed"];
    if (!fixed.is_object()) throw SpecValidationError("fixed", "expected an object");
    for (const auto& [key, value] : fixed.items()) {
      const std::string field = "fixed." + key;
      if (key == "omega") {
        spec.fixed.omega = number_at(fixed, "omega", field);
      } else if (key == "epsilon") {
        spec.fixed.epsilon = number_at(fixed, "epsilon", field);
      } else if (key == "gamma") {
        spec.fixed.gamma = number_at(fixed, "gamma", field);
      } else if (key == "t") {
        spec.fixed.t = number_at(fixed, "t", field);
      } else if (key == "n") {
        spec.fixed.n = block_index(value, field);
      } else if (key == "initial_state") {
        if (!value.is_array() || value.size() != 3) throw SpecValidationError(field, "expected [rx, ry, rz]");
        for (std::size_t k = 0; k < 3; ++k) {
          if (!value[k].is_number()) throw SpecValidationError(field, "expected [rx, ry, rz]");
          spec.fixed.initial_bloch[k] = value[k].get<double>();
        }
      } else {
        throw SpecValidationError(field, "unknown field");
      }
    }
  }

  if (doc.contains("axes")) {
    const auto& axes = doc["axes"];
    if (!axes.is_array()) throw SpecValidationError("axes", "expected an array");
    spec.axes.clear();
    for (std::size_t k = 0; k < axes.size(); ++k) {
      const std::string field = "axes[" + std::to_string(k) + "]";
      const auto& a = axes[k];
      if (!a.is_object() || !a.contains("name") || !a.contains("min") || !a.contains("max") || !a.contains("steps")) {
        throw SpecValidationError(field, "expected {name, min, max, steps}");
      }
      if (!a["name"].is_string()) throw SpecValidationError(field + ".name", "expected a string");
      const auto name = parse_axis_name(a["name"].get<std::string>());
      if (!name) throw SpecValidationError(field + ".name", "unknown axis '" + a["name"].get<std::string>() + "'");
      if (!a["steps"].is_number_integer()) throw SpecValidationError(field + ".steps", "expected an integer");
      spec.axes.push_back({*name, number_at(a, "min", field + ".min"), number_at(a, "max", field + ".max"),
                           a["steps"].get<int>()});
    }
  }

  if (doc.contains("quantities")) {
    const auto& qs = doc["quantities"];
    if (!qs.is_array()) throw SpecValidationError("quantities", "expected an array");
    spec.quantities.clear();
    for (std::size_t k = 0; k < qs.size(); ++k) {
      const std::string field = "quantities[" + std::to_string(k) + "]";
      if (!qs[k].is_string()) throw SpecValidationError(field, "expected a string");
      const auto q = parse_quantity(qs[k].get<std::string>());
      if (!q) throw SpecValidationError(field, "unknown quantity '" + qs[k].get<std::string>() + "'");
      if (!spec.wants(*q)) spec.quantities.push_back(*q);
    }
    std::sort(spec.quantities.begin(), spec.quantities.end());
  }

  if (doc.contains("n_list")) {
    const auto& ns = doc["n_list"];
    if (!ns.is_array()) throw SpecValidationError("n_list", "expected an array");
    spec.n_list.clear();
    for (std::size_t k = 0; k < ns.size(); ++k) {
      spec.n_list.push_back(block_index(ns[k], "n_list[" + std::to_string(k) + "]"));
    }
  }
  return spec;
}

SweepSpec load_config(const std::filesystem::path& path, SweepSpec base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

std::string spec_to_json(const SweepSpec& spec) {
  ordered_json doc;
  if (!spec.preset.empty()) doc["preset"] = spec.preset;
  ordered_json fixed;
  fixed["omega"] = spec.fixed.omega;
  fixed["epsilon"] = spec.fixed.epsilon;
  fixed["gamma"] = spec.fixed.gamma;
  fixed["n"] = spec.fixed.n;
  fixed["t"] = spec.fixed.t;
  fixed["initial_state"] = spec.fixed.initial_bloch;
  doc["fixed"] = std::move(fixed);
  ordered_json axes = ordered_json::array();
  for (const Axis& a : spec.axes) {
    ordered_json axis;
    axis["name"] = std::string(to_string(a.name));
    axis["min"] = a.min;
    axis["max"] = a.max;
    axis["steps"] = a.steps;
    axes.push_back(std::move(axis));
  }
  doc["axes"] = std::move(axes);
  ordered_json qs = ordered_json::array();
  for (const Quantity q : spec.quantities) qs.push_back(std::string(to_string(q)));
  doc["quantities"] = std::move(qs);
  doc["n_list"] = spec.n_list;
  return doc.dump();
}

}  // namespace nhjc::scan
