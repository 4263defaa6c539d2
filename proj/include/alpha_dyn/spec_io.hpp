#pragma once

// Partition spec files (JSON syntax) and the number formats shared by all
// reports: 15 significant digits, "p/q" for exact values, "inf(sym)" for
// symbolic infinity.

#include "alpha_dyn/numerics.hpp"
#include "alpha_dyn/rational.hpp"
#include "alpha_dyn/spec.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace alpha_dyn {

using json = nlohmann::json;

// =============================================================================
// Number formatting
// =============================================================================

inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";  // float overflow, not a symbolic value
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline std::string format_real(const ExtendedReal& v) {
  if (v.is_infinite()) return v.is_negative() ? "-inf(sym)" : "inf(sym)";
  return format_real(v.value());
}

inline std::string format_rational(const Rational& q) { return to_string(q); }

/// Inverse of format_real: decimals, "p/q", and the two symbolic infinities.
inline std::optional<ExtendedReal> parse_real_field(const std::string& text) {
  if (text == "inf(sym)") return ExtendedReal::infinity();
  if (text == "-inf(sym)") return ExtendedReal::infinity(true);
  if (text.find('/') != std::string::npos) {
    auto q = parse_rational(text);
    if (!q) return std::nullopt;
    return ExtendedReal(to_double(*q));
  }
  char* end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') return std::nullopt;
  return ExtendedReal(v);
}

// =============================================================================
// Spec parsing
// =============================================================================

namespace detail {

inline Param parse_param(const json& j, const std::string& field) {
  if (j.is_number()) return Param::real(j.get<double>());
  if (j.is_string()) {
    auto q = parse_rational(j.get<std::string>());
    if (!q) throw SpecError(field, "malformed rational string \"" + j.get<std::string>() + "\"");
    return Param::rational(*q);
  }
  throw SpecError(field, "must be a number or a rational string");
}

inline const json& require_field(const json& j, const std::string& field, const std::string& path) {
  auto it = j.find(field);
  if (it == j.end()) throw SpecError(path + field, "is required");
  return *it;
}

inline double parse_number(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    auto q = parse_rational(j.get<std::string>());
    if (q) return to_double(*q);
  }
  throw SpecError(field, "must be a number");
}

inline PartitionSpec parse_spec_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw SpecError(path.empty() ? "spec" : path, "must be a JSON object");
  const json& fam = require_field(j, "family", path);
  if (!fam.is_string()) throw SpecError(path + "family", "must be a string");
  std::string name = fam.get<std::string>();
  auto param = [&](const char* field) { return parse_param(require_field(j, field, path), path + field); };

  if (name == "harmonic") return PartitionSpec::harmonic();
  if (name == "dyadic") return PartitionSpec::dyadic();
  if (name == "geometric") return PartitionSpec::geometric(param("c"), param("r"));
  if (name == "power_atoms") return PartitionSpec::power_atoms(param("s"));
  if (name == "power_tail") {
    if (j.contains("theta")) return PartitionSpec::power_tail(param("theta"));
    return PartitionSpec::power_tail(parse_param(require_field(j, "θ", path), path + "theta"));
  }
  if (name == "log_power_atoms") {
    double k = parse_number(require_field(j, "k", path), path + "k");
    const json& sh = require_field(j, "shift", path);
    if (!sh.is_number_integer()) throw SpecError(path + "shift", "must be an integer");
    Param s = j.contains("s") ? param("s") : Param::real(2.0);
    return PartitionSpec::log_power_atoms(k, sh.get<long>(), s);
  }
  if (name == "explicit") {
    const json& pre = require_field(j, "prefix", path);
    if (!pre.is_array()) throw SpecError(path + "prefix", "must be an array");
    std::vector<Param> prefix;
    for (std::size_t i = 0; i < pre.size(); ++i)
      prefix.push_back(parse_param(pre[i], path + "prefix[" + std::to_string(i) + "]"));
    PartitionSpec tail = parse_spec_json(require_field(j, "tail_family", path), path + "tail_family.");
    return PartitionSpec::explicit_prefix(std::move(prefix), std::move(tail));
  }
  throw SpecError(path + "family", "unknown family \"" + name + "\"");
}

inline json param_json(const Param& p) {
  if (p.exact) return to_string(*p.exact);
  return p.value;
}

}  // namespace detail

inline PartitionSpec parse_spec(const json& j) { return detail::parse_spec_json(j, ""); }

inline PartitionSpec parse_spec_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError("spec", std::string("JSON syntax error: ") + e.what());
  }
  return parse_spec(j);
}

inline PartitionSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("spec", "cannot open file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

inline json spec_to_json(const PartitionSpec& s) {
  json j;
  j["family"] = family_name(s.family);
  switch (s.family) {
    case FamilyKind::Harmonic:
    case FamilyKind::Dyadic: break;
    case FamilyKind::Geometric:
      j["c"] = detail::param_json(s.c);
      j["r"] = detail::param_json(s.r);
      break;
    case FamilyKind::PowerAtoms: j["s"] = detail::param_json(s.s); break;
    case FamilyKind::PowerTail: j["theta"] = detail::param_json(s.theta); break;
    case FamilyKind::LogPowerAtoms:
      j["k"] = s.k;
      j["shift"] = s.shift;
      if (s.s.exact || s.s.value != 2.0) j["s"] = detail::param_json(s.s);
      break;
    case FamilyKind::Explicit: {
      json pre = json::array();
      for (const Param& p : s.prefix) pre.push_back(detail::param_json(p));
      j["prefix"] = pre;
      if (s.tail_family) j["tail_family"] = spec_to_json(*s.tail_family);
      break;
    }
  }
  return j;
}

}  // namespace alpha_dyn
