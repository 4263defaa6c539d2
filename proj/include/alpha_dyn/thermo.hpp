#pragma once

// Pressure, free energy, the Lyapunov spectra tau (Lueroth side) and sigma
// (Farey side), and phase-transition reports.
//
//   p(u)   = log sum a_n^u
//   v(u)   = the r with sum a_n^u e^{-r n} = 1   (0 on [1, inf) if expansive)
//   tau(s) = inf_u  u + p(u)/s
//   sigma(s) = inf_u  u + v(u)/s

#include "alpha_dyn/numerics.hpp"
#include "alpha_dyn/parallel.hpp"
#include "alpha_dyn/partition.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace alpha_dyn {

// =============================================================================
// Curves
// =============================================================================

enum class CurveKind { Pressure, FreeEnergy, TauSpectrum, SigmaSpectrum };

inline const char* to_string(CurveKind k) {
  switch (k) {
    case CurveKind::Pressure: return "pressure";
    case CurveKind::FreeEnergy: return "free_energy";
    case CurveKind::TauSpectrum: return "tau";
    case CurveKind::SigmaSpectrum: return "sigma";
  }
  return "?";
}

struct CurveSample {
  double argument = 0.0;
  ExtendedReal value;
  ExtendedReal minimizer;     // spectra only
  double error_bound = 0.0;
  bool by_convention = false;  // value fixed outside the admissible range, not an infimum
};

struct CurveTable {
  CurveKind kind = CurveKind::Pressure;
  std::vector<CurveSample> samples;
};

/// k points from a to b inclusive (k >= 2), or {a} for k == 1.
inline std::vector<double> linear_grid(double a, double b, std::size_t k) {
  if (k == 0) throw DomainError("grid needs at least one sample");
  if (k == 1) return {a};
  if (!(b > a)) throw DomainError("grid end must exceed grid start");
  std::vector<double> g(k);
  for (std::size_t i = 0; i < k; ++i) g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(k - 1);
  g.back() = b;
  return g;
}

// =============================================================================
// Pressure
// =============================================================================

struct RealEstimate {
  ExtendedReal value;
  double error_bound = 0.0;
};

/// inf{r > 0 : sum a_n^r < inf}, from the asymptotic law of the atoms.
inline double t_infinity(const Partition& p) {
  Asymptotics a = p.asymptotics();
  if (a.rate > 0.0) return 0.0;
  return 1.0 / a.power;
}

inline RealEstimate pressure(const Partition& p, double u) {
  double rate = p.asymptotics().rate;
  SeriesValue z = p.series(u, u * rate, Weight{});
  if (!z.finite) return {ExtendedReal::infinity(), 0.0};
  return {ExtendedReal(z.log_abs), z.rel_error};
}

/// p'(u) = sum a^u log a / sum a^u. Symbolic -inf when only the numerator
/// diverges (u = t_inf with finite pressure).
inline RealEstimate pressure_derivative(const Partition& p, double u) {
  double rate = p.asymptotics().rate;
  SeriesValue z = p.series(u, u * rate, Weight{});
  if (!z.finite) throw DomainError("pressure_derivative: pressure is infinite at u");
  SeriesValue zl = p.series(u, u * rate, Weight{0, 0, 1});
  if (!zl.finite) return {ExtendedReal::infinity(true), 0.0};
  double d = -std::exp(zl.log_abs - z.log_abs);
  return {ExtendedReal(d), std::fabs(d) * (z.rel_error + zl.rel_error)};
}

/// -log max a_n. The search stops once the remaining tail cannot hold a
/// larger atom.
inline double t_minus(const Partition& p) {
  double best = -std::numeric_limits<double>::infinity();
  for (u64 n = 1;; ++n) {
    best = std::max(best, p.log_atom(n));
    if (p.tail_or_zero(n + 1) <= std::exp(best)) break;
    if (n > (u64{1} << 24)) throw RangeError("t_minus: maximal atom not isolated");
  }
  return -best;
}

struct SpectrumBounds {
  double s_minus = 0.0;
  double s_plus = 0.0;
  u64 s_minus_at = 0;  // 0 when the bound is the limit
  u64 s_plus_at = 0;
  double limit = 0.0;  // lim -(log a_n)/n
};

/// Extremes of -(log a_n)/n: finite search plus the limit (log rho for
/// expanding partitions, 0 otherwise).
inline SpectrumBounds spectrum_bounds(const Partition& p, u64 n_search = 10000) {
  Classification c = p.classify();
  SpectrumBounds b;
  b.limit = c.tail_kind == TailKind::Expanding ? std::log(c.rho) : 0.0;
  b.s_minus = b.s_plus = b.limit;
  for (u64 n = 1; n <= n_search; ++n) {
    double v = -p.log_atom(n) / static_cast<double>(n);
    if (v < b.s_minus) {
      b.s_minus = v;
      b.s_minus_at = n;
    }
    if (v > b.s_plus) {
      b.s_plus = v;
      b.s_plus_at = n;
    }
  }
  // constant sequence up to rounding: degenerate spectrum
  if (b.s_plus - b.s_minus <= 1e-13 * b.s_plus) {
    b.s_minus = b.s_plus = b.limit;
    b.s_minus_at = b.s_plus_at = 0;
  }
  return b;
}

// =============================================================================
// Free energy
// =============================================================================

struct FreeEnergy {
  double value = 0.0;
  double error_bound = 0.0;
  double alpha = 0.0;  // total decay v + u*rate used by the series engine
};

inline FreeEnergy free_energy(const Partition& p, double u) {
  const Asymptotics as = p.asymptotics();
  FreeEnergy out;
  if (as.rate == 0.0 && u >= 1.0) return out;

  auto f = [&](double y) { return p.series(u, std::exp(y), Weight{}).log_abs; };
  double lo = 0.0, hi = 0.0;
  double f0 = f(0.0), flo = f0, fhi = f0;
  if (f0 > 0.0) {
    for (double step = 1.0;; step *= 2.0) {
      hi = lo + step;
      fhi = f(hi);
      if (fhi <= 0.0) break;
      lo = hi;
      flo = fhi;
      if (hi > 710.0) throw RangeError("free_energy: root beyond representable decay");
    }
  } else if (f0 < 0.0) {
    for (double step = 1.0;; step *= 2.0) {
      lo = hi - step;
      flo = f(lo);
      if (flo >= 0.0) break;
      hi = lo;
      fhi = flo;
      if (lo < -700.0) {
        // Z(u, 0+) = 1 to double precision: v is 0 within resolution
        out.alpha = 0.0;
        out.value = -u * as.rate;
        out.error_bound = std::exp(-700.0);
        return out;
      }
    }
  }
  double y = 0.0;
  if (flo == 0.0) {
    y = lo;
  } else if (fhi == 0.0) {
    y = hi;
  } else {
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                               boost::math::tools::eps_tolerance<double>(52), iters);
    y = 0.5 * (r.first + r.second);
  }
  out.alpha = std::exp(y);
  out.value = out.alpha - u * as.rate;

  SeriesValue z = p.series(u, out.alpha, Weight{});
  SeriesValue zn = p.series(u, out.alpha, Weight{1, 0, 0});
  double mean_n = std::exp(zn.log_abs - z.log_abs);  // -dlogZ/dv
  out.error_bound = (z.rel_error + std::fabs(z.log_abs)) / mean_n + 4e-16 * (out.alpha + std::fabs(u * as.rate));
  return out;
}

/// v'(u) = sum a^u e^{-vn} log a / sum n a^u e^{-vn}; the right derivative (0)
/// on the flat part of expansive partitions.
inline double free_energy_derivative(const Partition& p, double u, const FreeEnergy& v) {
  if (p.asymptotics().rate == 0.0 && u >= 1.0) return 0.0;
  SeriesValue zl = p.series(u, v.alpha, Weight{0, 0, 1});
  SeriesValue zn = p.series(u, v.alpha, Weight{1, 0, 0});
  if (!zl.finite || !zn.finite) return 0.0;
  return -std::exp(zl.log_abs - zn.log_abs);
}

inline double free_energy_derivative(const Partition& p, double u) {
  return free_energy_derivative(p, u, free_energy(p, u));
}

/// r_+ = -(sum n a_n)/(sum a_n log a_n); infinite for infinite type.
inline ExtendedReal r_plus(const Partition& p) {
  double rate = p.asymptotics().rate;
  SeriesValue num = p.series(1.0, rate, Weight{1, 0, 0});
  if (!num.finite) return ExtendedReal::infinity();
  SeriesValue den = p.series(1.0, rate, Weight{0, 0, 1});
  if (!den.finite) return ExtendedReal(0.0);
  return ExtendedReal(std::exp(num.log_abs - den.log_abs));
}

/// Left derivative of v at 1 for expansive partitions: -1/r_+.
inline double free_energy_left_derivative_at_one(const Partition& p) {
  ExtendedReal r = r_plus(p);
  return r.is_infinite() ? 0.0 : -1.0 / r.value();
}

// =============================================================================
// Spectra
// =============================================================================

struct SpectrumPoint {
  double value = 0.0;
  ExtendedReal minimizer;
  double error_bound = 0.0;
  bool by_convention = false;
};

namespace detail {

/// Golden-section minimum of a convex function on [a, b].
template <class G>
std::pair<double, double> golden_minimum(G&& g, double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double gc = g(c), gd = g(d);
  for (int i = 0; i < 200 && b - a > 1e-13 * (1.0 + std::fabs(a)); ++i) {
    if (gc <= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  return gc <= gd ? std::pair{c, gc} : std::pair{d, gd};
}

/// Root of an increasing function h with h(lo) < 0 < h(hi).
template <class H>
double increasing_root(H&& h, double lo, double hi, double hlo, double hhi) {
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(h, lo, hi, hlo, hhi,
                                             boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace detail

inline SpectrumPoint tau(const Partition& p, double s) {
  SpectrumPoint out;
  if (!(s > 0.0)) throw DomainError("tau: s must be positive");
  const double tm = t_minus(p);
  if (s <= tm) {
    out.minimizer = ExtendedReal::infinity();
    out.by_convention = true;
    return out;
  }
  const double tinf = t_infinity(p);
  RealEstimate pinf = pressure(p, tinf);
  auto boundary = [&]() {
    out.value = tinf + pinf.value.value() / s;
    out.minimizer = ExtendedReal(tinf);
    out.error_bound = pinf.error_bound / s;
    return out;
  };
  if (pinf.value.is_finite()) {
    RealEstimate d0 = pressure_derivative(p, tinf);
    if (d0.value.is_finite() && d0.value.value() + s >= 0.0) return boundary();
  }

  auto h = [&](double u) { return 1.0 + pressure_derivative(p, u).value.value() / s; };
  auto g = [&](double u) { return u + pressure(p, u).value.value() / s; };

  // lower bracket strictly inside the finite domain
  double d = 1.0, lo = tinf + d, hlo = h(lo);
  while (hlo >= 0.0) {
    d /= 16.0;
    double next = tinf + d;
    // within the tolerance band the series engine treats u as t_inf
    if (d < 1e-10 * (1.0 + tinf)) {
      if (pinf.value.is_finite()) return boundary();
      // derivative too steep to resolve: minimize g directly
      auto [u, val] = detail::golden_minimum(g, lo, lo + 16.0 * d);
      out.value = val;
      out.minimizer = ExtendedReal(u);
      out.error_bound = pressure(p, u).error_bound / s + 1e-12;
      return out;
    }
    lo = next;
    hlo = h(lo);
  }
  double hi = lo, hhi = hlo;
  for (double step = 1.0; hhi <= 0.0; step *= 2.0) {
    lo = hi;
    hlo = hhi;
    hi = lo + step;
    if (hi > 1e7) throw RangeError("tau: minimizer beyond search range (s too close to t_minus)");
    hhi = h(hi);
  }
  double u = detail::increasing_root(h, lo, hi, hlo, hhi);
  RealEstimate pu = pressure(p, u);
  out.value = u + pu.value.value() / s;
  out.minimizer = ExtendedReal(u);
  out.error_bound = pu.error_bound / s;
  return out;
}

inline SpectrumPoint sigma(const Partition& p, double s) {
  SpectrumPoint out;
  const SpectrumBounds b = spectrum_bounds(p);
  if (b.s_minus == b.s_plus && s == b.s_plus) {
    // degenerate spectrum: every point has exponent s_+
    out.value = 1.0;
    out.minimizer = ExtendedReal(1.0);
    out.by_convention = true;
    return out;
  }
  if (!(s > b.s_minus && s < b.s_plus)) {
    out.minimizer = s <= b.s_minus ? ExtendedReal::infinity() : ExtendedReal::infinity(true);
    out.by_convention = true;
    return out;
  }
  const bool expansive = p.asymptotics().rate == 0.0;
  double left_slope = 0.0;
  if (expansive) {
    left_slope = free_energy_left_derivative_at_one(p);
    if (1.0 + left_slope / s <= 0.0) {
      out.value = 1.0;
      out.minimizer = ExtendedReal(1.0);
      return out;
    }
  }

  auto h = [&](double u) {
    if (expansive && u >= 1.0) return 1.0 + left_slope / s;
    return 1.0 + free_energy_derivative(p, u) / s;
  };

  double lo, hi, hlo, hhi;
  if (expansive) {
    hi = 1.0;
    hhi = h(hi);
    lo = 0.0;
    hlo = h(lo);
    for (double step = 1.0; hlo >= 0.0; step *= 2.0) {
      hi = lo;
      hhi = hlo;
      lo = hi - step;
      if (lo < -1e5) throw RangeError("sigma: minimizer beyond search range (s too close to s_+)");
      hlo = h(lo);
    }
  } else {
    lo = hi = 0.0;
    hlo = hhi = h(0.0);
    if (hlo >= 0.0) {
      for (double step = 1.0; hlo >= 0.0; step *= 2.0) {
        hi = lo;
        hhi = hlo;
        lo = hi - step;
        if (lo < -1e5) throw RangeError("sigma: minimizer beyond search range (s too close to s_+)");
        hlo = h(lo);
      }
    } else {
      for (double step = 1.0; hhi <= 0.0; step *= 2.0) {
        lo = hi;
        hlo = hhi;
        hi = lo + step;
        if (hi > 1e5) throw RangeError("sigma: minimizer beyond search range (s too close to s_-)");
        hhi = h(hi);
      }
    }
  }
  double u = hhi == 0.0 ? hi : detail::increasing_root(h, lo, hi, hlo, hhi);
  FreeEnergy v = free_energy(p, u);
  out.value = u + v.value / s;
  out.minimizer = ExtendedReal(u);
  out.error_bound = v.error_bound / s;
  return out;
}

namespace detail {

template <class F>
CurveTable evaluate_grid(CurveKind kind, const std::vector<double>& grid, F&& f) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("grid arguments must be strictly increasing");
  CurveTable t;
  t.kind = kind;
  t.samples.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { t.samples[i] = f(grid[i]); });
  return t;
}

inline CurveSample to_sample(double s, const SpectrumPoint& pt) {
  CurveSample c;
  c.argument = s;
  c.value = ExtendedReal(pt.value);
  c.minimizer = pt.minimizer;
  c.error_bound = pt.error_bound;
  c.by_convention = pt.by_convention;
  return c;
}

}  // namespace detail

inline CurveTable pressure_curve(const Partition& p, const std::vector<double>& u_grid) {
  return detail::evaluate_grid(CurveKind::Pressure, u_grid, [&](double u) {
    RealEstimate e = pressure(p, u);
    CurveSample c;
    c.argument = u;
    c.value = e.value;
    c.error_bound = e.error_bound;
    return c;
  });
}

inline CurveTable free_energy_curve(const Partition& p, const std::vector<double>& u_grid) {
  return detail::evaluate_grid(CurveKind::FreeEnergy, u_grid, [&](double u) {
    FreeEnergy e = free_energy(p, u);
    CurveSample c;
    c.argument = u;
    c.value = ExtendedReal(e.value);
    c.error_bound = e.error_bound;
    return c;
  });
}

inline CurveTable tau_spectrum(const Partition& p, const std::vector<double>& s_grid) {
  return detail::evaluate_grid(CurveKind::TauSpectrum, s_grid,
                               [&](double s) { return detail::to_sample(s, tau(p, s)); });
}

inline CurveTable sigma_spectrum(const Partition& p, const std::vector<double>& s_grid) {
  return detail::evaluate_grid(CurveKind::SigmaSpectrum, s_grid,
                               [&](double s) { return detail::to_sample(s, sigma(p, s)); });
}

// =============================================================================
// Legendre consistency
// =============================================================================

struct LegendreCheck {
  double max_violation = 0.0;      // max over (s,u) of value - (u + P(u)/s), clipped at 0
  double max_minimizer_gap = 0.0;  // |value - (m + P(m)/s)| at recorded minimizers m
  std::size_t pairs_checked = 0;
};

/// Checks a tau or sigma table against the envelope u + P(u)/s on a u-grid,
/// with P = p or v. Samples fixed by convention are skipped.
inline LegendreCheck legendre_check(const Partition& p, const CurveTable& curve, const std::vector<double>& u_grid) {
  bool is_tau = curve.kind == CurveKind::TauSpectrum;
  if (!is_tau && curve.kind != CurveKind::SigmaSpectrum) throw DomainError("legendre_check needs a spectrum table");
  auto potential = [&](double u) -> ExtendedReal {
    return is_tau ? pressure(p, u).value : ExtendedReal(free_energy(p, u).value);
  };
  std::vector<ExtendedReal> pu(u_grid.size());
  parallel_for(u_grid.size(), [&](std::size_t i) { pu[i] = potential(u_grid[i]); });

  LegendreCheck out;
  for (const CurveSample& c : curve.samples) {
    if (c.by_convention) continue;
    double s = c.argument, val = c.value.value();
    for (std::size_t i = 0; i < u_grid.size(); ++i) {
      if (pu[i].is_infinite()) continue;
      double env = u_grid[i] + pu[i].value() / s;
      out.max_violation = std::max(out.max_violation, val - env);
      ++out.pairs_checked;
    }
    if (c.minimizer.is_finite()) {
      double m = c.minimizer.value();
      ExtendedReal pm = potential(m);
      if (pm.is_finite()) out.max_minimizer_gap = std::max(out.max_minimizer_gap, std::fabs(val - (m + pm.value() / s)));
    }
  }
  return out;
}

// =============================================================================
// Phase transitions
// =============================================================================

enum class MapKind { Luroth, Farey };
enum class Verdict { Transition, NoTransition, Undetermined };

inline const char* to_string(MapKind m) { return m == MapKind::Luroth ? "luroth" : "farey"; }
inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Transition: return "transition";
    case Verdict::NoTransition: return "no_transition";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

/// -p'(t_inf + delta) for shrinking delta, with an Aitken extrapolation.
struct TZeroEvidence {
  std::array<double, 3> delta{1e-2, 1e-3, 1e-4};
  std::array<double, 3> slope{};
  double extrapolated = 0.0;
  bool diverging = false;
};

struct PhaseReport {
  MapKind map_kind = MapKind::Luroth;
  Verdict verdict = Verdict::Undetermined;
  bool transition = false;
  double t_infinity = 0.0;
  ExtendedReal p_at_t_infinity;
  ExtendedReal t_zero;
  ExtendedReal r_plus;
  double t_minus = 0.0;
  double s_minus = 0.0;
  double s_plus = 0.0;
  std::string criterion_used;
  std::optional<TZeroEvidence> evidence;
  // Lueroth transition only: tau at s = 2 t_zero by t_inf + p(t_inf)/s and by
  // t_inf + (sum a_n^t_inf)/s
  std::optional<double> post_transition_s;
  std::optional<double> post_transition_inf_formula;
  std::optional<double> post_transition_sum_formula;
};

namespace detail {

inline std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

inline TZeroEvidence t_zero_evidence(const Partition& p, double tinf) {
  TZeroEvidence e;
  for (int i = 0; i < 3; ++i) e.slope[i] = -pressure_derivative(p, tinf + e.delta[i]).value.value();
  double d1 = e.slope[1] - e.slope[0], d2 = e.slope[2] - e.slope[1];
  e.diverging = d2 > 0.5 * d1 && d2 > 1e-9 * std::fabs(e.slope[2]) && e.slope[2] > 2.0 * e.slope[0];
  double denom = d2 - d1;
  e.extrapolated = (std::fabs(denom) > 1e-300 && !e.diverging) ? e.slope[2] - d2 * d2 / denom : e.slope[2];
  return e;
}

inline void fill_common(const Partition& p, PhaseReport& r) {
  r.t_infinity = t_infinity(p);
  r.p_at_t_infinity = pressure(p, r.t_infinity).value;
  r.t_minus = t_minus(p);
  SpectrumBounds b = spectrum_bounds(p);
  r.s_minus = b.s_minus;
  r.s_plus = b.s_plus;
  r.r_plus = r_plus(p);
  if (r.p_at_t_infinity.is_finite()) {
    RealEstimate d = pressure_derivative(p, r.t_infinity);
    r.t_zero = -d.value;
  } else {
    r.t_zero = ExtendedReal::infinity();
  }
}

}  // namespace detail

inline PhaseReport luroth_phase_report(const Partition& p) {
  PhaseReport r;
  r.map_kind = MapKind::Luroth;
  detail::fill_common(p, r);
  Classification c = p.classify();
  if (c.tail_kind == TailKind::Expanding) {
    r.verdict = Verdict::NoTransition;
    r.criterion_used = "expanding partition: t_inf = 0, no phase transition";
  } else if (c.tail_kind == TailKind::Expansive && c.theta > 0.0) {
    double e = c.psi_log_power / (1.0 + c.theta);
    bool diverges = e <= 2.0 + Partition::tol;
    r.verdict = diverges ? Verdict::NoTransition : Verdict::Transition;
    r.criterion_used = detail::fmt("theta > 0: sum psi(n)^(1/(1+theta)) log(n)/n with psi ~ (log n)^-k ~ sum (log n)^(%.15g)/n, ", 1.0 - e) +
                       (diverges ? "diverges: no phase transition" : "converges: phase transition at t_inf");
  } else if (c.tail_kind == TailKind::Expansive && c.theta == 0.0) {
    bool diverges = !p.converges(1.0, 0.0, Weight{0, 0, 1});
    r.verdict = diverges ? Verdict::NoTransition : Verdict::Transition;
    r.criterion_used = std::string("theta = 0: sum a_n log a_n ") +
                       (diverges ? "diverges: no phase transition" : "converges: phase transition at t_inf");
  } else {
    r.criterion_used = "no analytic criterion for this tail law; see numeric evidence";
  }
  r.transition = r.verdict == Verdict::Transition;
  r.evidence = detail::t_zero_evidence(p, r.t_infinity);
  if (r.verdict == Verdict::Undetermined) r.transition = !r.evidence->diverging;
  if (r.transition && r.t_zero.is_finite() && r.p_at_t_infinity.is_finite()) {
    double s = 2.0 * r.t_zero.value();
    r.post_transition_s = s;
    r.post_transition_inf_formula = r.t_infinity + r.p_at_t_infinity.value() / s;
    r.post_transition_sum_formula = r.t_infinity + std::exp(r.p_at_t_infinity.value()) / s;
  }
  return r;
}

inline PhaseReport farey_phase_report(const Partition& p) {
  PhaseReport r;
  r.map_kind = MapKind::Farey;
  detail::fill_common(p, r);
  Classification c = p.classify();
  if (c.tail_kind == TailKind::Expanding) {
    r.verdict = Verdict::NoTransition;
    r.criterion_used = "expanding partition: no phase transition";
  } else if (c.type_class == TypeClass::Infinite) {
    r.verdict = Verdict::NoTransition;
    r.criterion_used = "expansive, infinite type: no phase transition";
  } else {
    r.verdict = Verdict::Transition;
    r.criterion_used = detail::fmt("expansive, finite type: phase transition at u = 1, v'(1-) = -1/r_+ = %.15g",
                                   free_energy_left_derivative_at_one(p));
  }
  r.transition = r.verdict == Verdict::Transition;
  return r;
}

}  // namespace alpha_dyn
