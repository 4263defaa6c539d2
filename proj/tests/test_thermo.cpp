#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace alpha_dyn;

namespace {

const double ln2 = std::numbers::ln2;

/// Independent minimizer for the post-transition check: plain golden section
/// on g(u) = u + p(u)/s, bracket [a, b].
double golden_oracle(const Partition& p, double s, double a, double b) {
  auto g = [&](double u) { return u + pressure(p, u).value.value() / s; };
  const double r = 0.6180339887498949;
  double c = b - r * (b - a), d = a + r * (b - a);
  double gc = g(c), gd = g(d);
  while (b - a > 1e-13) {
    if (gc <= gd) {
      b = d, d = c, gd = gc, c = b - r * (b - a), gc = g(c);
    } else {
      a = c, c = d, gc = gd, d = a + r * (b - a), gd = g(d);
    }
  }
  return std::min(gc, gd);
}

}  // namespace

// ==== pressure ===============================================================

TEST(Pressure, ClosedForms) {
  for (const auto& f : alpha_dyn::testing::all_families())
    EXPECT_NEAR(pressure(Partition(f.spec), 1.0).value.value(), 0.0, 1e-12) << f.name;
  Partition d(PartitionSpec::dyadic());
  for (double u = 0.05; u <= 6.0; u += 0.05)
    EXPECT_NEAR(pressure(d, u).value.value(), -std::log(std::pow(2.0, u) - 1.0), 1e-12) << u;
  EXPECT_NEAR(pressure_derivative(d, 1.0).value.value(), -2.0 * ln2, 1e-12);
}

TEST(Pressure, InfiniteAtTheCriticalExponent) {
  Partition h(PartitionSpec::harmonic());
  EXPECT_TRUE(pressure(h, 0.5).value.is_infinite());
  EXPECT_TRUE(pressure(h, 0.3).value.is_infinite());
  EXPECT_TRUE(pressure(h, 0.5 + 1e-3).value.is_finite());
  EXPECT_GT(pressure(h, 0.5 + 1e-3).value.value(), pressure(h, 0.5 + 1e-2).value.value());
}

TEST(Pressure, TInfinity) {
  EXPECT_DOUBLE_EQ(t_infinity(Partition(PartitionSpec::harmonic())), 0.5);
  EXPECT_DOUBLE_EQ(t_infinity(Partition(alpha_dyn::testing::geometric_third())), 0.0);
  EXPECT_NEAR(t_infinity(Partition(PartitionSpec::power_atoms(Param::rational(3)))), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(t_infinity(Partition(PartitionSpec::power_tail(Param::real(0.5)))), 1.0 / 1.5, 1e-15);
  EXPECT_NEAR(t_infinity(Partition(PartitionSpec::log_power_atoms(12, 5))), 0.5, 1e-15);
}

TEST(Pressure, HarmonicDerivativeAtOne) {
  // frozen: direct summation of a_n log a_n with an Euler-Maclaurin tail
  const double oracle = -2.0462774528558785;
  Partition h(PartitionSpec::harmonic());
  EXPECT_NEAR(pressure_derivative(h, 1.0).value.value(), oracle, 1e-12);
  NeumaierSum s;
  for (int n = 1; n <= 2000000; ++n) {
    double a = 1.0 / (double(n) * (n + 1.0));
    s.add(a * std::log(a));
  }
  EXPECT_NEAR(s.value(), oracle, 2e-5);
}

TEST(Pressure, ConvexAndDecreasing) {
  for (const FigurePreset& fp : figure_presets()) {
    Partition p(fp.spec);
    CurveTable t = pressure_curve(p, fp.pressure_grid.points());
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
      ASSERT_TRUE(t.samples[i].value.is_finite()) << fp.name;
      ExtendedReal d = pressure_derivative(p, t.samples[i].argument).value;
      if (d.is_infinite())
        ASSERT_TRUE(d.is_negative() && t.samples[i].argument == t_infinity(p)) << fp.name;
      else
        ASSERT_LT(d.value(), 0.0) << fp.name;
      if (i >= 2) {
        double d2 = t.samples[i].value.value() - 2.0 * t.samples[i - 1].value.value() + t.samples[i - 2].value.value();
        ASSERT_GE(d2, -1e-9) << fp.name << " i=" << i;
      }
    }
  }
}

TEST(Pressure, DerivativeMatchesFiniteDifference) {
  for (const auto& f : alpha_dyn::testing::all_families()) {
    Partition p(f.spec);
    for (double u : {0.9, 1.0, 1.7, 3.0}) {
      double h = 1e-5;
      double fd = (pressure(p, u + h).value.value() - pressure(p, u - h).value.value()) / (2.0 * h);
      EXPECT_NEAR(pressure_derivative(p, u).value.value(), fd, 1e-6 * (1.0 + std::fabs(fd))) << f.name << " u=" << u;
    }
  }
}

// ==== free energy ============================================================

TEST(FreeEnergy, DyadicClosedForm) {
  Partition d(PartitionSpec::dyadic());
  double worst = 0.0;
  for (double u = -5.0; u <= 5.0; u += 0.01) worst = std::max(worst, std::fabs(free_energy(d, u).value - (1.0 - u) * ln2));
  EXPECT_LE(worst, 1e-10);
}

TEST(FreeEnergy, VanishesFromOneOnForExpansive) {
  for (const auto& f : alpha_dyn::testing::all_families()) {
    Partition p(f.spec);
    if (p.classify().tail_kind != TailKind::Expansive) continue;
    EXPECT_EQ(free_energy(p, 1.0).value, 0.0) << f.name;
    EXPECT_EQ(free_energy(p, 1.01).value, 0.0) << f.name;
    EXPECT_EQ(free_energy(p, 4.0).value, 0.0) << f.name;
    EXPECT_GT(free_energy(p, 0.9).value, 0.0) << f.name;
  }
}

TEST(FreeEnergy, SolvesTheDefiningEquation) {
  for (const auto& f : alpha_dyn::testing::all_families()) {
    Partition p(f.spec);
    for (double u : {-2.0, -0.5, 0.3, 0.8}) {
      FreeEnergy v = free_energy(p, u);
      SeriesValue z = p.series(u, v.alpha, Weight{});
      EXPECT_NEAR(z.log_abs, 0.0, 1e-10) << f.name << " u=" << u;
    }
  }
}

TEST(FreeEnergy, ConvexAndNonIncreasing) {
  for (const FigurePreset& fp : figure_presets()) {
    Partition p(fp.spec);
    CurveTable t = free_energy_curve(p, linear_grid(-3.0, 3.0, 121));
    bool expanding = p.classify().tail_kind == TailKind::Expanding;
    for (std::size_t i = 1; i < t.samples.size(); ++i) {
      double a = t.samples[i - 1].value.value(), b = t.samples[i].value.value();
      ASSERT_LE(b, a + 1e-12) << fp.name;
      if (expanding) {
        ASSERT_LT(b, a) << fp.name;
      }
    }
    for (std::size_t i = 2; i < t.samples.size(); ++i) {
      double d2 = t.samples[i].value.value() - 2.0 * t.samples[i - 1].value.value() + t.samples[i - 2].value.value();
      ASSERT_GE(d2, -1e-9) << fp.name << " i=" << i;
    }
  }
}

TEST(FreeEnergy, GeometricAsymptoticSlopes) {
  Partition g(alpha_dyn::testing::geometric_third());
  SpectrumBounds b = spectrum_bounds(g);
  double U = 50.0, h = 0.5;
  double right = (free_energy(g, U + h).value - free_energy(g, U - h).value) / (2.0 * h);
  double left = (free_energy(g, -U + h).value - free_energy(g, -U - h).value) / (2.0 * h);
  EXPECT_NEAR(right, -b.s_minus, 0.02 * b.s_minus);
  EXPECT_NEAR(left, -b.s_plus, 0.02 * b.s_plus);
}

TEST(FreeEnergy, RPlus) {
  Partition h(PartitionSpec::harmonic());
  EXPECT_TRUE(r_plus(h).is_infinite());
  Partition z3(PartitionSpec::power_atoms(Param::rational(3)));
  // oracle: direct sums n a_n and a_n log a_n
  const double zeta3 = 1.2020569031595942, zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  NeumaierSum s;
  for (int n = 1; n <= 1000000; ++n) {
    double a = std::pow(double(n), -3.0) / zeta3;
    s.add(a * std::log(a));
  }
  double rp = (zeta2 / zeta3) / -s.value();
  EXPECT_NEAR(r_plus(z3).value(), rp, 1e-6 * rp);
}

// ==== spectrum bounds ========================================================

TEST(SpectrumBoundsTest, NamedValues) {
  Partition h(PartitionSpec::harmonic());
  SpectrumBounds bh = spectrum_bounds(h);
  EXPECT_NEAR(t_minus(h), ln2, 1e-12);
  EXPECT_NEAR(bh.s_plus, std::log(6.0) / 2.0, 1e-12);
  EXPECT_EQ(bh.s_plus_at, 2u);
  EXPECT_EQ(bh.s_minus, 0.0);

  Partition g(alpha_dyn::testing::geometric_third());
  SpectrumBounds bg = spectrum_bounds(g);
  EXPECT_NEAR(bg.s_minus, std::log(1.5), 1e-12);
  EXPECT_NEAR(bg.s_plus, std::log(3.0), 1e-12);
  EXPECT_NEAR(bg.limit, std::log(3.0), 1e-12);

  SpectrumBounds bd = spectrum_bounds(Partition(PartitionSpec::dyadic()));
  EXPECT_NEAR(bd.s_minus, ln2, 1e-15);
  EXPECT_EQ(bd.s_minus, bd.s_plus);
}

TEST(SpectrumBoundsTest, ExpansiveLowerEndIsZero) {
  for (const auto& f : alpha_dyn::testing::all_families()) {
    Partition p(f.spec);
    if (p.classify().tail_kind == TailKind::Expansive) {
      EXPECT_EQ(spectrum_bounds(p).s_minus, 0.0) << f.name;
    }
  }
}

// ==== tau ====================================================================

TEST(Tau, ValuesInUnitIntervalAndZeroBelowTMinus) {
  for (const FigurePreset& fp : figure_presets()) {
    Partition p(fp.spec);
    CurveTable t = tau_spectrum(p, fp.tau_grid.points());
    double tm = t_minus(p);
    for (const CurveSample& c : t.samples) {
      double v = c.value.value();
      ASSERT_GE(v, -1e-12) << fp.name;
      ASSERT_LE(v, 1.0 + 1e-9) << fp.name;
      if (c.argument <= tm) {
        ASSERT_EQ(v, 0.0) << fp.name;
      }
      if (c.argument <= tm) {
        ASSERT_TRUE(c.by_convention);
      }
    }
  }
}

TEST(Tau, FullMeasurePoint) {
  for (const auto& f : alpha_dyn::testing::all_families()) {
    Partition p(f.spec);
    double s = -pressure_derivative(p, 1.0).value.value();
    SpectrumPoint pt = tau(p, s);
    EXPECT_NEAR(pt.value, 1.0, 1e-8) << f.name;
    EXPECT_NEAR(pt.minimizer.value(), 1.0, 1e-6) << f.name;
  }
}

TEST(Tau, DyadicAtLogTwo) {
  Partition d(PartitionSpec::dyadic());
  SpectrumPoint pt = tau(d, 2.0 * ln2);
  EXPECT_NEAR(pt.value, 1.0, 1e-10);
  // closed form: tau(s) = min_u u - log(2^u - 1)/s
  for (double s : {0.8, 1.0, 1.5, 3.0}) {
    double best = 1e300;
    for (double u = 1e-3; u < 20.0; u += 1e-4) best = std::min(best, u - std::log(std::pow(2.0, u) - 1.0) / s);
    EXPECT_NEAR(tau(d, s).value, best, 1e-7) << s;
  }
}

TEST(Tau, ApproachesTInfinity) {
  Partition h(PartitionSpec::harmonic());
  double tm = t_minus(h);
  EXPECT_NEAR(tau(h, 1e5 * tm).value, 0.5, 1e-3);
  // slow approach: the gap shrinks with s
  EXPECT_GT(tau(h, 1e3 * tm).value - 0.5, tau(h, 1e5 * tm).value - 0.5);
  Partition g(alpha_dyn::testing::geometric_third());
  EXPECT_NEAR(tau(g, 1e5 * t_minus(g)).value, 0.0, 1e-3);
  EXPECT_GT(tau(g, 1e3 * t_minus(g)).value, tau(g, 1e5 * t_minus(g)).value);
}

TEST(Tau, PostTransitionBoundaryFormula) {
  Partition p(PartitionSpec::log_power_atoms(12, 5));
  PhaseReport r = luroth_phase_report(p);
  ASSERT_EQ(r.verdict, Verdict::Transition);
  double tinf = r.t_infinity, pinf = r.p_at_t_infinity.value(), t0 = r.t_zero.value();
  for (double s : {t0, 1.1 * t0, 2.0 * t0, 5.0 * t0, 50.0 * t0}) {
    SpectrumPoint pt = tau(p, s);
    EXPECT_NEAR(pt.value, tinf + pinf / s, 1e-9) << s;
    EXPECT_NEAR(pt.value, golden_oracle(p, s, tinf, tinf + 4.0), 1e-9) << s;
  }
  // below t_zero the minimizer leaves the boundary
  SpectrumPoint inner = tau(p, 0.8 * t0);
  EXPECT_GT(inner.minimizer.value(), tinf);
  EXPECT_LT(inner.value, tinf + pinf / (0.8 * t0));
  ASSERT_TRUE(r.post_transition_s.has_value());
  EXPECT_NEAR(*r.post_transition_inf_formula, tinf + pinf / *r.post_transition_s, 1e-12);
}

// ==== sigma ==================================================================

TEST(Sigma, OutsideRangeIsZero) {
  Partition g(alpha_dyn::testing::geometric_third());
  SpectrumBounds b = spectrum_bounds(g);
  EXPECT_EQ(sigma(g, 0.5 * b.s_minus).value, 0.0);
  EXPECT_EQ(sigma(g, 1.5 * b.s_plus).value, 0.0);
  EXPECT_GT(sigma(g, 0.5 * (b.s_minus + b.s_plus)).value, 0.0);
  SpectrumPoint d = sigma(Partition(PartitionSpec::dyadic()), ln2);
  EXPECT_EQ(d.value, 1.0);
  EXPECT_EQ(sigma(Partition(PartitionSpec::dyadic()), 0.7).value, 0.0);
}

TEST(Sigma, ValuesInUnitInterval) {
  for (const FigurePreset& fp : figure_presets()) {
    Partition p(fp.spec);
    CurveTable t = sigma_spectrum(p, fp.sigma_grid.points());
    for (const CurveSample& c : t.samples) {
      ASSERT_GE(c.value.value(), -1e-12) << fp.name;
      ASSERT_LE(c.value.value(), 1.0 + 1e-12) << fp.name;
    }
  }
}

TEST(Sigma, TransitionPlateau) {
  Partition z3(PartitionSpec::power_atoms(Param::rational(3)));
  double edge = 1.0 / r_plus(z3).value();
  for (double s : {0.1 * edge, 0.5 * edge, 0.99 * edge}) EXPECT_EQ(sigma(z3, s).value, 1.0) << s;
  EXPECT_LT(sigma(z3, 1.2 * edge).value, 1.0);
  // without a transition sigma stays below one away from the full-measure point
  Partition h(PartitionSpec::harmonic());
  EXPECT_LT(sigma(h, 0.5).value, 1.0);
}

TEST(Sigma, FullMeasurePointForExpanding) {
  Partition g(alpha_dyn::testing::geometric_third());
  // sigma peaks at 1 where the minimizer is u = 1
  double s = -free_energy_derivative(g, 1.0);
  SpectrumPoint pt = sigma(g, s);
  EXPECT_NEAR(pt.value, 1.0, 1e-8);
  EXPECT_NEAR(pt.minimizer.value(), 1.0, 1e-6);
}

// ==== Legendre envelope ======================================================

TEST(Legendre, EnvelopeOnSelectedPresets) {
  for (const char* name : {"fig1", "fig6"}) {
    FigurePreset fp = *find_preset(name);
    Partition p(fp.spec);
    std::vector<double> s_tau = fp.tau_grid.points(), s_sig = fp.sigma_grid.points();
    LegendreCheck lt = legendre_check(p, tau_spectrum(p, s_tau), fp.pressure_grid.points());
    LegendreCheck ls = legendre_check(p, sigma_spectrum(p, s_sig), fp.free_energy_grid.points());
    EXPECT_LE(lt.max_violation, 1e-9) << name;
    EXPECT_LE(lt.max_minimizer_gap, 1e-6) << name;
    EXPECT_LE(ls.max_violation, 1e-9) << name;
    EXPECT_LE(ls.max_minimizer_gap, 1e-6) << name;
    EXPECT_GT(lt.pairs_checked, 0u);
  }
}

TEST(Legendre, RejectsNonSpectrumTables) {
  Partition h(PartitionSpec::harmonic());
  EXPECT_THROW(legendre_check(h, pressure_curve(h, {1.0}), {1.0}), DomainError);
  EXPECT_THROW(tau_spectrum(h, {2.0, 1.0}), DomainError);
}

// ==== phase reports ==========================================================

TEST(Phase, PresetVerdicts) {
  for (const FigurePreset& fp : figure_presets()) {
    Partition p(fp.spec);
    PhaseReport l = luroth_phase_report(p);
    PhaseReport f = farey_phase_report(p);
    EXPECT_EQ(l.verdict, fp.luroth_verdict) << fp.name;
    EXPECT_EQ(f.verdict, fp.farey_verdict) << fp.name;
    EXPECT_EQ(l.transition, fp.luroth_verdict == Verdict::Transition);
    if (fp.pressure_finite_at_t_infinity) {
      EXPECT_EQ(l.p_at_t_infinity.is_finite(), *fp.pressure_finite_at_t_infinity) << fp.name;
    }
    EXPECT_FALSE(l.criterion_used.empty());
  }
}

TEST(Phase, NamedFamilies) {
  EXPECT_EQ(farey_phase_report(Partition(PartitionSpec::power_tail(Param::real(0.5)))).verdict, Verdict::NoTransition);
  PhaseReport g = luroth_phase_report(Partition(alpha_dyn::testing::geometric_third()));
  EXPECT_EQ(g.verdict, Verdict::NoTransition);
  EXPECT_EQ(g.t_infinity, 0.0);
}

TEST(Phase, TZeroEvidence) {
  PhaseReport h = luroth_phase_report(Partition(PartitionSpec::log_power_atoms(4, 5)));
  ASSERT_TRUE(h.evidence.has_value());
  EXPECT_TRUE(h.evidence->diverging);
  EXPECT_TRUE(h.t_zero.is_infinite());
  PhaseReport t = luroth_phase_report(Partition(PartitionSpec::log_power_atoms(12, 5)));
  ASSERT_TRUE(t.evidence.has_value());
  EXPECT_FALSE(t.evidence->diverging);
  EXPECT_NEAR(t.t_zero.value(), t.evidence->extrapolated, 1e-3 * t.t_zero.value());
  EXPECT_TRUE(t.p_at_t_infinity.is_finite());
}
