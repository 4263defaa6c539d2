#pragma once

// CSV and JSON-syntax text emitters for the command-line reports.

#include "alpha_dyn/conjugacy.hpp"
#include "alpha_dyn/ergodic.hpp"
#include "alpha_dyn/partition.hpp"
#include "alpha_dyn/renewal.hpp"
#include "alpha_dyn/spec_io.hpp"
#include "alpha_dyn/thermo.hpp"

#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace alpha_dyn {

// =============================================================================
// CSV
// =============================================================================

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

/// Fields never contain commas or quotes, so a plain split suffices.
inline CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') throw DomainError("CSV: CRLF line ending");
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != t.header.size()) throw DomainError("CSV: row width differs from header");
      t.rows.push_back(std::move(fields));
    }
  }
  return t;
}

inline void write_curve_csv(std::ostream& os, const CurveTable& t) {
  switch (t.kind) {
    case CurveKind::Pressure: write_csv_row(os, {"u", "p", "error_bound"}); break;
    case CurveKind::FreeEnergy: write_csv_row(os, {"u", "v", "error_bound"}); break;
    case CurveKind::TauSpectrum:
    case CurveKind::SigmaSpectrum: write_csv_row(os, {"s", "value", "minimizer_u", "error_bound"}); break;
  }
  bool spectrum = t.kind == CurveKind::TauSpectrum || t.kind == CurveKind::SigmaSpectrum;
  for (const CurveSample& c : t.samples) {
    if (spectrum)
      write_csv_row(os, {format_real(c.argument), format_real(c.value), format_real(c.minimizer),
                         format_real(c.error_bound)});
    else
      write_csv_row(os, {format_real(c.argument), format_real(c.value), format_real(c.error_bound)});
  }
}

/// n, w_n, partial_sum_w, partial_sum_t, weak_ratio, strong_ratio, gl_product.
/// Rows held exactly print w_n and both partial sums as p/q; strong_ratio is
/// empty where the strong law is not guaranteed.
inline void write_renewal_csv(std::ostream& os, const Partition& p, const RenewalReport& rep) {
  write_csv_row(os, {"n", "w_n", "partial_sum_w", "partial_sum_t", "weak_ratio", "strong_ratio", "gl_product"});
  Rational sw = 0, st = 0;
  for (const RenewalRow& r : rep.rows) {
    std::string w, psw, pst;
    if (rep.sequence.is_exact(r.n)) {
      sw += rep.sequence.exact_values[r.n];
      st += p.tail_exact(r.n);
      w = format_rational(rep.sequence.exact_values[r.n]);
      psw = format_rational(sw);
      pst = format_rational(st);
    } else {
      w = format_real(r.w);
      psw = format_real(r.partial_sum_w);
      pst = format_real(r.partial_sum_t);
    }
    write_csv_row(os, {std::to_string(r.n), w, psw, pst, format_real(r.weak_ratio),
                       r.strong_ratio ? format_real(*r.strong_ratio) : std::string(), format_real(r.gl_product)});
  }
}

inline void write_simulation_csv(std::ostream& os, const TrajectoryStats& st) {
  write_csv_row(os, {"n", "mean_digit", "mean_log_digit", "mean_neg_log_atom", "farey_quotient"});
  for (const RunningMeans& r : st.decades)
    write_csv_row(os, {std::to_string(r.n), format_real(r.mean_digit), format_real(r.mean_log_digit),
                       format_real(r.mean_neg_log_atom), format_real(r.farey_quotient)});
}

// =============================================================================
// JSON-syntax text
// =============================================================================
//
// Values are written pre-formatted so numbers keep 15 significant digits and
// symbolic infinities stay distinguishable; nlohmann would print 17 digits.

class JsonText {
 public:
  JsonText& raw(const std::string& key, const std::string& text) {
    fields_.emplace_back(key, text);
    return *this;
  }
  JsonText& str(const std::string& key, const std::string& value) { return raw(key, json(value).dump()); }
  JsonText& num(const std::string& key, double v) {
    std::string s = format_real(v);
    return std::isfinite(v) ? raw(key, s) : str(key, s);
  }
  JsonText& num(const std::string& key, const ExtendedReal& v) {
    return v.is_infinite() ? str(key, format_real(v)) : num(key, v.value());
  }
  JsonText& boolean(const std::string& key, bool b) { return raw(key, b ? "true" : "false"); }
  JsonText& integer(const std::string& key, long long v) { return raw(key, std::to_string(v)); }

  std::string dump(int indent = 0) const {
    std::string pad(indent + 2, ' '), close(indent, ' ');
    std::string s = "{\n";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      s += pad + json(fields_[i].first).dump() + ": " + fields_[i].second;
      s += i + 1 < fields_.size() ? ",\n" : "\n";
    }
    return s + close + "}";
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

inline std::string phase_report_text(const PhaseReport& r) {
  JsonText j;
  j.str("map_kind", to_string(r.map_kind))
      .str("verdict", to_string(r.verdict))
      .boolean("transition", r.transition)
      .num("t_infinity", r.t_infinity)
      .num("p_at_t_infinity", r.p_at_t_infinity)
      .num("t_zero", r.t_zero)
      .num("r_plus", r.r_plus)
      .num("t_minus", r.t_minus)
      .num("s_minus", r.s_minus)
      .num("s_plus", r.s_plus)
      .str("criterion_used", r.criterion_used);
  if (r.evidence) {
    JsonText e;
    e.raw("delta", "[" + format_real(r.evidence->delta[0]) + ", " + format_real(r.evidence->delta[1]) + ", " +
                       format_real(r.evidence->delta[2]) + "]")
        .raw("minus_p_prime", "[" + format_real(r.evidence->slope[0]) + ", " + format_real(r.evidence->slope[1]) +
                                  ", " + format_real(r.evidence->slope[2]) + "]")
        .num("extrapolated", r.evidence->extrapolated)
        .boolean("diverging", r.evidence->diverging);
    j.raw("t_zero_evidence", e.dump(2));
  }
  if (r.post_transition_s) {
    j.num("post_transition_s", *r.post_transition_s)
        .num("post_transition_tau_log_sum", *r.post_transition_inf_formula)
        .num("post_transition_tau_plain_sum", *r.post_transition_sum_formula);
  }
  return j.dump();
}

inline std::string info_text(const Partition& p) {
  Classification c = p.classify();
  SpectrumBounds b = spectrum_bounds(p);
  HolderExponents h = holder_exponents(p);
  SeriesValue ts = p.tail_sum();
  JsonText j;
  j.raw("spec", spec_to_json(p.spec()).dump())
      .str("description", p.description())
      .boolean("exact", p.exact())
      .num("normalization", p.normalization())
      .str("type_class", to_string(c.type_class))
      .str("tail_kind", to_string(c.tail_kind));
  if (c.tail_kind == TailKind::Expansive) j.num("theta", c.theta).num("psi_log_power", c.psi_log_power);
  j.num("rho", c.rho)
      .boolean("eventually_decreasing", c.eventually_decreasing)
      .num("t_infinity", t_infinity(p))
      .num("t_minus", t_minus(p))
      .num("s_minus", b.s_minus)
      .num("s_plus", b.s_plus)
      .num("sum_tails", ts.extended())
      .num("kappa_plus", h.kappa_plus)
      .num("kappa_minus", h.kappa_minus);
  std::string atoms = "[";
  for (u64 n = 1; n <= 5; ++n) {
    if (n > 1) atoms += ", ";
    atoms += p.exact() ? json(format_rational(p.atom_exact(n))).dump() : format_real(p.atom(n));
  }
  j.raw("atoms", atoms + "]");
  return j.dump();
}

}  // namespace alpha_dyn
