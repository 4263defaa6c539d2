#pragma once

// alpha-dyn command line. Exit codes: 0 success, 2 domain or usage error,
// 3 spec parse error.

#include "alpha_dyn/conjugacy.hpp"
#include "alpha_dyn/dynamics.hpp"
#include "alpha_dyn/ergodic.hpp"
#include "alpha_dyn/presets.hpp"
#include "alpha_dyn/renewal.hpp"
#include "alpha_dyn/report.hpp"
#include "alpha_dyn/spec_io.hpp"
#include "alpha_dyn/thermo.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>

namespace alpha_dyn::cli {

enum ExitCode { ok = 0, internal_error = 1, domain_error = 2, spec_error = 3 };

/// --spec accepts inline JSON, a file path, or a built-in name.
inline PartitionSpec resolve_spec(const std::string& arg) {
  std::size_t i = arg.find_first_not_of(" \t\n");
  if (i != std::string::npos && arg[i] == '{') return parse_spec_text(arg);
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return load_spec_file(arg);
  if (auto b = builtin_spec(arg)) return *b;
  throw SpecError("spec", "\"" + arg + "\" is neither a file, a built-in name nor inline JSON");
}

namespace detail {

struct Options {
  std::string spec = "harmonic";
  std::string out_path;
  std::string emit;
  std::string x;
  std::size_t max_digits = 30;
  double eps = 1e-12;
  std::size_t n = 100000;
  double from = 0.0, to = 1.0;
  std::size_t samples = 50;
  std::string kind = "tau";
  std::string map = "luroth";
  u64 steps = 1000000;
  std::uint64_t seed = 42;
  std::string figure;
  std::string out_dir = ".";
};

inline void check_grid(double from, double to, std::size_t samples, const char* from_name, const char* to_name) {
  if (!std::isfinite(from)) throw DomainError(std::string(from_name) + ": must be finite");
  if (!std::isfinite(to)) throw DomainError(std::string(to_name) + ": must be finite");
  if (samples < 1) throw DomainError("--samples: must be >= 1");
  if (samples > 1 && !(to > from)) throw DomainError(std::string(to_name) + ": must exceed " + from_name);
}

inline std::vector<double> grid(const Options& o) {
  return o.samples == 1 ? std::vector<double>{o.from} : linear_grid(o.from, o.to, o.samples);
}

inline Rational parse_point(const std::string& text) {
  auto q = parse_rational(text);
  if (!q) throw DomainError("--x: malformed rational or decimal \"" + text + "\"");
  if (!(*q > 0 && *q <= 1)) throw DomainError("--x: must lie in (0, 1]");
  return *q;
}

inline void cmd_info(const Options& o, std::ostream& out) {
  Partition p(resolve_spec(o.spec));
  out << info_text(p) << '\n';
}

inline void cmd_expand(const Options& o, std::ostream& out, std::ostream& err) {
  Partition p(resolve_spec(o.spec));
  Rational q = parse_point(o.x);
  DigitWord w = p.exact() ? expand(p, q, o.max_digits) : expand(p, to_double(q), o.max_digits);
  if (o.emit == "farey-code") {
    out << to_string(farey_code(w, static_cast<std::size_t>(std::min<u64>(w.digit_sum(), 1u << 20)))) << '\n';
  } else if (o.emit.empty() || o.emit == "digits") {
    out << to_string(w) << '\n';
  } else {
    throw DomainError("--emit: expected digits or farey-code");
  }
  if (!w.terminated()) err << "status: " << to_string(w.status) << '\n';
}

inline void cmd_theta(const Options& o, std::ostream& out) {
  Partition p(resolve_spec(o.spec));
  if (!(o.eps > 0.0)) throw DomainError("--eps: must be positive");
  Rational q = parse_point(o.x);
  u64 target = digit_sum_target(o.eps);
  DigitWord w = p.exact() ? expand_to_digit_sum(p, q, target) : expand_to_digit_sum(p, to_double(q), target);
  write_csv_row(out, {"x", "theta", "error_bound", "digit_sum"});
  std::string value = w.terminated() ? format_rational(theta_exact(w)) : format_real(theta(w).value);
  write_csv_row(out, {o.x, value, format_real(theta(w).error_bound), std::to_string(w.digit_sum())});
}

inline void cmd_renewal(const Options& o, std::ostream& out) {
  Partition p(resolve_spec(o.spec));
  if (o.n < 1) throw DomainError("--n: must be >= 1");
  if (!o.emit.empty() && o.emit != "csv") throw DomainError("--emit: renewal supports csv only");
  RenewalReport rep = renewal_report(p, o.n);
  write_renewal_csv(out, p, rep);
}

inline void cmd_curve(const Options& o, std::ostream& out, CurveKind kind) {
  Partition p(resolve_spec(o.spec));
  bool spectrum = kind == CurveKind::TauSpectrum || kind == CurveKind::SigmaSpectrum;
  const char* from_name = spectrum ? "--s-from" : "--u-from";
  const char* to_name = spectrum ? "--s-to" : "--u-to";
  check_grid(o.from, o.to, o.samples, from_name, to_name);
  if (spectrum && !(o.from > 0.0)) throw DomainError(std::string(from_name) + ": must be positive");
  std::vector<double> g = grid(o);
  CurveTable t;
  switch (kind) {
    case CurveKind::Pressure: t = pressure_curve(p, g); break;
    case CurveKind::FreeEnergy: t = free_energy_curve(p, g); break;
    case CurveKind::TauSpectrum: t = tau_spectrum(p, g); break;
    case CurveKind::SigmaSpectrum: t = sigma_spectrum(p, g); break;
  }
  write_curve_csv(out, t);
}

inline void cmd_phase(const Options& o, std::ostream& out) {
  Partition p(resolve_spec(o.spec));
  if (o.map == "luroth")
    out << phase_report_text(luroth_phase_report(p)) << '\n';
  else if (o.map == "farey")
    out << phase_report_text(farey_phase_report(p)) << '\n';
  else
    throw DomainError("--map: expected luroth or farey");
}

inline void cmd_simulate(const Options& o, std::ostream& out) {
  Partition p(resolve_spec(o.spec));
  if (o.steps < 1) throw DomainError("--steps: must be >= 1");
  if (!o.emit.empty() && o.emit != "csv") throw DomainError("--emit: simulate supports csv only");
  write_simulation_csv(out, sample_digits(p, o.steps, o.seed));
}

inline void cmd_figure(const Options& o, std::ostream& out) {
  auto preset = find_preset(o.figure);
  if (!preset) throw DomainError("figure: unknown preset \"" + o.figure + "\" (expected fig1..fig6)");
  Partition p(preset->spec);
  std::filesystem::path dir(o.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DomainError("--out-dir: cannot create \"" + o.out_dir + "\"");
  auto emit = [&](const std::string& suffix, const CurveTable& t) {
    std::filesystem::path f = dir / (preset->name + "_" + suffix + ".csv");
    std::ofstream os(f, std::ios::binary);
    if (!os) throw DomainError("--out-dir: cannot write \"" + f.string() + "\"");
    write_curve_csv(os, t);
    out << f.string() << '\n';
  };
  emit("pressure", pressure_curve(p, preset->pressure_grid.points()));
  emit("free_energy", free_energy_curve(p, preset->free_energy_grid.points()));
  emit("tau", tau_spectrum(p, preset->tau_grid.points()));
  emit("sigma", sigma_spectrum(p, preset->sigma_grid.points()));
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"alpha-dyn: alpha-Farey and alpha-Lueroth maps, renewal sequences and spectra", "alpha-dyn"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand all help");

  auto with_spec = [&](CLI::App* c) {
    c->add_option("--spec", o.spec, "spec file, built-in name (harmonic, dyadic, fig1..fig6) or inline JSON");
    c->add_option("--out", o.out_path, "write results to this file instead of stdout");
    return c;
  };
  std::function<void(std::ostream&)> action;

  auto* info = with_spec(app.add_subcommand("info", "partition metadata"));
  info->callback([&] { action = [&](std::ostream& os) { detail::cmd_info(o, os); }; });

  auto* expand_cmd = with_spec(app.add_subcommand("expand", "alpha-Lueroth digits of x"));
  expand_cmd->add_option("--x", o.x, "point in (0,1], rational p/q or decimal")->required();
  expand_cmd->add_option("--max-digits", o.max_digits, "digit budget");
  expand_cmd->add_option("--emit", o.emit, "digits | farey-code");
  expand_cmd->callback([&] { action = [&](std::ostream& os) { detail::cmd_expand(o, os, err); }; });

  auto* theta_cmd = with_spec(app.add_subcommand("theta", "conjugacy to the tent map at x"));
  theta_cmd->add_option("--x", o.x, "point in (0,1]")->required();
  theta_cmd->add_option("--eps", o.eps, "error target");
  theta_cmd->callback([&] { action = [&](std::ostream& os) { detail::cmd_theta(o, os); }; });

  auto* renewal = with_spec(app.add_subcommand("renewal", "sum-level measures w_n and renewal laws"));
  renewal->add_option("--n", o.n, "last index N");
  renewal->add_option("--emit", o.emit, "csv");
  renewal->callback([&] { action = [&](std::ostream& os) { detail::cmd_renewal(o, os); }; });

  auto* pressure_cmd = with_spec(app.add_subcommand("pressure", "p(u) on a grid"));
  pressure_cmd->add_option("--u-from", o.from, "first u")->required();
  pressure_cmd->add_option("--u-to", o.to, "last u")->required();
  pressure_cmd->add_option("--samples", o.samples, "grid size");
  pressure_cmd->add_option("--emit", o.emit, "csv");
  pressure_cmd->callback([&] { action = [&](std::ostream& os) { detail::cmd_curve(o, os, CurveKind::Pressure); }; });

  auto* free_cmd = with_spec(app.add_subcommand("free-energy", "v(u) on a grid"));
  free_cmd->add_option("--u-from", o.from, "first u")->required();
  free_cmd->add_option("--u-to", o.to, "last u")->required();
  free_cmd->add_option("--samples", o.samples, "grid size");
  free_cmd->add_option("--emit", o.emit, "csv");
  free_cmd->callback([&] { action = [&](std::ostream& os) { detail::cmd_curve(o, os, CurveKind::FreeEnergy); }; });

  auto* spectrum = with_spec(app.add_subcommand("spectrum", "tau or sigma spectrum on an s-grid"));
  spectrum->add_option("--kind", o.kind, "tau | sigma")->check(CLI::IsMember({"tau", "sigma"}));
  spectrum->add_option("--s-from", o.from, "first s")->required();
  spectrum->add_option("--s-to", o.to, "last s")->required();
  spectrum->add_option("--samples", o.samples, "grid size");
  spectrum->add_option("--emit", o.emit, "csv");
  spectrum->callback([&] {
    action = [&](std::ostream& os) {
      detail::cmd_curve(o, os, o.kind == "tau" ? CurveKind::TauSpectrum : CurveKind::SigmaSpectrum);
    };
  });

  auto* phase = with_spec(app.add_subcommand("phase", "phase-transition report"));
  phase->add_option("--map", o.map, "luroth | farey");
  phase->callback([&] { action = [&](std::ostream& os) { detail::cmd_phase(o, os); }; });

  auto* simulate = with_spec(app.add_subcommand("simulate", "Monte-Carlo Birkhoff averages per decade"));
  simulate->add_option("--steps", o.steps, "number of digits");
  simulate->add_option("--seed", o.seed, "64-bit seed");
  simulate->add_option("--emit", o.emit, "csv");
  simulate->callback([&] { action = [&](std::ostream& os) { detail::cmd_simulate(o, os); }; });

  auto* figure = app.add_subcommand("figure", "write the four CSV files of a figure preset");
  figure->add_option("name", o.figure, "fig1..fig6")->required();
  figure->add_option("--out-dir", o.out_dir, "output directory");
  figure->callback([&] { action = [&](std::ostream& os) { detail::cmd_figure(o, os); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "alpha-dyn: " << e.what() << '\n';
    return domain_error;
  }

  try {
    if (!o.out_path.empty()) {
      std::ofstream f(o.out_path, std::ios::binary);
      if (!f) throw DomainError("--out: cannot write \"" + o.out_path + "\"");
      action(f);
    } else {
      action(out);
    }
  } catch (const SpecError& e) {
    err << "alpha-dyn: spec error: " << e.what() << '\n';
    return spec_error;
  } catch (const DomainError& e) {
    err << "alpha-dyn: " << e.what() << '\n';
    return domain_error;
  } catch (const RangeError& e) {
    err << "alpha-dyn: " << e.what() << '\n';
    return domain_error;
  } catch (const std::exception& e) {
    err << "alpha-dyn: internal error: " << e.what() << '\n';
    return internal_error;
  }
  return ok;
}

}  // namespace alpha_dyn::cli
