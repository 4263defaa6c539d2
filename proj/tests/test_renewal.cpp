#include "support.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>

using namespace alpha_dyn;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

}  // namespace

TEST(RenewalExact, HarmonicFirstValues) {
  auto t0 = std::chrono::steady_clock::now();
  Partition h(PartitionSpec::harmonic());
  RenewalSequence s = renewal_sequence(h, 4);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ASSERT_EQ(s.backend, Backend::Exact);
  ASSERT_EQ(s.exact_until, 4u);
  EXPECT_EQ(s.exact_values[1], q(1, 2));
  EXPECT_EQ(s.exact_values[2], q(5, 12));
  EXPECT_EQ(s.exact_values[3], q(3, 8));
  EXPECT_EQ(s.exact_values[4], q(251, 720));
  EXPECT_LT(secs, 1.0);
}

TEST(RenewalExact, OracleExamples) {
  Partition h(PartitionSpec::harmonic());
  EXPECT_EQ(composition_oracle_exact(h, 2), q(5, 12));
  EXPECT_EQ(composition_oracle_exact(h, 1), h.atom_exact(1));
  EXPECT_EQ(composition_oracle_exact(Partition(PartitionSpec::dyadic()), 3), q(1, 2));
  EXPECT_THROW(composition_oracle_exact(h, 23), DomainError);
}

TEST(RenewalExact, RecursionMatchesCompositionOracle) {
  for (const auto& f : alpha_dyn::testing::exact_families()) {
    Partition p(f.spec);
    RenewalSequence s = renewal_sequence(p, 16);
    ASSERT_EQ(s.exact_until, 16u) << f.name;
    for (unsigned n = 1; n <= 16; ++n) ASSERT_EQ(s.exact_values[n], composition_oracle_exact(p, n)) << f.name;
  }
}

TEST(RenewalFloat, RecursionMatchesCompositionOracle) {
  for (const auto& f : alpha_dyn::testing::all_families()) {
    Partition p(f.spec);
    RenewalOptions opt;
    opt.use_exact = false;
    RenewalSequence s = renewal_sequence(p, 16, opt);
    for (unsigned n = 1; n <= 16; ++n)
      ASSERT_NEAR(s.values[n], composition_oracle(p, n), 1e-12 * s.values[n]) << f.name << " n=" << n;
  }
}

TEST(RenewalExact, DyadicIsConstantHalf) {
  Partition d(PartitionSpec::dyadic());
  RenewalSequence s = renewal_sequence(d, 600);
  ASSERT_GE(s.exact_until, 500u);
  for (std::size_t n = 1; n <= s.exact_until; ++n) ASSERT_EQ(s.exact_values[n], q(1, 2)) << n;
  for (std::size_t n = 1; n <= 600; ++n) ASSERT_EQ(s.values[n], 0.5) << n;
}

TEST(RenewalExact, SwitchNoteRecordsTheCap) {
  Partition h(PartitionSpec::harmonic());
  RenewalSequence s = renewal_sequence(h, 200);
  EXPECT_LT(s.exact_until, 200u);
  EXPECT_FALSE(s.switch_note.empty());
  EXPECT_TRUE(s.is_exact(1));
  EXPECT_FALSE(s.is_exact(200));
}

TEST(RenewalFloat, TracksExactToOneThousand) {
  // exact arithmetic with the digit cap lifted; the Harmonic run takes ~20 s
  RenewalOptions exact_opt;
  exact_opt.exact_digit_cap = 1u << 30;
  exact_opt.exact_max_n = 1000;
  RenewalOptions float_opt;
  float_opt.use_exact = false;
  for (const auto& f : {alpha_dyn::testing::Named{"harmonic", PartitionSpec::harmonic()},
                        alpha_dyn::testing::Named{"geometric", alpha_dyn::testing::geometric_third()}}) {
    Partition p(f.spec);
    RenewalSequence e = renewal_sequence(p, 1000, exact_opt);
    RenewalSequence fl = renewal_sequence(p, 1000, float_opt);
    ASSERT_EQ(e.exact_until, 1000u) << f.name;
    double worst = 0.0;
    for (std::size_t n = 1; n <= 1000; ++n)
      worst = std::max(worst, std::fabs(fl.values[n] - e.values[n]) / e.values[n]);
    EXPECT_LT(worst, 1e-12) << f.name;
  }
}

TEST(RenewalFloat, ValuesStayInUnitInterval) {
  for (const auto& f : alpha_dyn::testing::all_families()) {
    RenewalOptions opt;
    opt.use_exact = false;
    RenewalSequence s = renewal_sequence(Partition(f.spec), 5000, opt);
    for (std::size_t n = 1; n <= 5000; ++n) {
      ASSERT_GT(s.values[n], 0.0) << f.name;
      ASSERT_LE(s.values[n], 1.0) << f.name;
    }
  }
}

// ==== limits and laws ========================================================

TEST(RenewalLimits, Predictions) {
  EXPECT_EQ(limit_prediction(Partition(PartitionSpec::harmonic())), 0.0);
  EXPECT_NEAR(limit_prediction(Partition(PartitionSpec::dyadic())), 0.5, 1e-15);
  double target = 6.0 / (std::numbers::pi * std::numbers::pi);
  Partition p2(PartitionSpec::power_tail(Param::rational(2)));
  EXPECT_NEAR(limit_prediction(p2), target, 1e-12);
  EXPECT_NEAR(limit_prediction(p2), 1.0 / (p2.partial_tail_sum(1000).partial + p2.partial_tail_sum(1000).remainder.value()),
              1e-12);
}

TEST(RenewalLimits, FiniteTypeConverges) {
  Partition p2(PartitionSpec::power_tail(Param::rational(2)));
  RenewalSequence s = renewal_sequence(p2, 10000);
  EXPECT_NEAR(s.values[10000], 6.0 / (std::numbers::pi * std::numbers::pi), 1e-2);
}

TEST(RenewalLaws, Constants) {
  auto K = [](double th) { return 1.0 / (std::tgamma(2.0 - th) * std::tgamma(1.0 + th)); };
  auto k = [](double th) { return 1.0 / (std::tgamma(2.0 - th) * std::tgamma(th)); };
  EXPECT_NEAR(weak_law_constant(Partition(PartitionSpec::harmonic())), 1.0, 1e-13);
  Partition half(PartitionSpec::power_tail(Param::real(0.5)));
  EXPECT_NEAR(weak_law_constant(half), 4.0 / std::numbers::pi, 1e-13);
  Partition tq(PartitionSpec::power_tail(Param::real(0.75)));
  EXPECT_NEAR(weak_law_constant(tq), K(0.75), 1e-13);
  EXPECT_NEAR(strong_law_constant(tq), k(0.75), 1e-13);
  EXPECT_NEAR(strong_law_constant(Partition(PartitionSpec::harmonic())), 1.0, 1e-13);
  EXPECT_EQ(weak_law_constant(Partition(PartitionSpec::dyadic())), 1.0);
}

TEST(RenewalLaws, GammaFunctionMatchesStd) {
  for (double x = 0.01; x < 3.0; x += 0.00731) EXPECT_NEAR(gamma_function(x), std::tgamma(x), 1e-12 * std::tgamma(x)) << x;
  EXPECT_NEAR(gamma_function(0.5), std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(gamma_function(1.0), 1.0, 1e-15);
  EXPECT_NEAR(gamma_function(2.0), 1.0, 1e-15);
  EXPECT_NEAR(gamma_function(1.5), 0.5 * std::sqrt(std::numbers::pi), 1e-15);
}

TEST(RenewalLaws, StrongLawRefusedAtOrBelowHalf) {
  Partition half(PartitionSpec::power_tail(Param::real(0.5)));
  EXPECT_THROW(strong_law_constant(half), DomainError);
  EXPECT_FALSE(strong_law_applies(half));
  RenewalReport rep = renewal_report(half, 10);
  EXPECT_FALSE(rep.rows.back().strong_ratio.has_value());
  RenewalSequence s = renewal_sequence(half, 10);
  EXPECT_THROW(strong_law_ratio(half, s, 10), DomainError);
}

TEST(RenewalLaws, DyadicRatios) {
  Partition d(PartitionSpec::dyadic());
  RenewalSequence s = renewal_sequence(d, 1000);
  EXPECT_NEAR(weak_law_ratio(d, s, 1000), 1.0, 1e-2);
  EXPECT_NEAR(strong_law_ratio(d, s, 1000), 1.0, 1e-12);
  EXPECT_THROW(weak_law_ratio(d, s, 1001), DomainError);
}

TEST(RenewalLaws, HarmonicStrongLawTrend) {
  Partition h(PartitionSpec::harmonic());
  RenewalSequence s = renewal_sequence(h, 20000);
  double r3 = strong_law_ratio(h, s, 1000), r4 = strong_law_ratio(h, s, 20000);
  EXPECT_LT(std::fabs(r4 - 1.0), std::fabs(r3 - 1.0));
  EXPECT_GT(r4, 0.8);
  EXPECT_LT(r4, 1.05);
}

TEST(RenewalLaws, GarsiaLampertiTrack) {
  EXPECT_NEAR(gl_target(0.5), 1.0 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(gl_target(0.75), std::sqrt(2.0) / (2.0 * std::numbers::pi), 1e-15);
  Partition half(PartitionSpec::power_tail(Param::real(0.5)));
  RenewalSequence s = renewal_sequence(half, 20000);
  std::vector<double> track = gl_liminf_track(half, s);
  ASSERT_EQ(track.size(), 20000u);
  for (std::size_t i = 1; i < track.size(); ++i) ASSERT_LE(track[i], track[i - 1]);
  EXPECT_NEAR(track.back(), gl_target(0.5), 0.05);
  EXPECT_THROW(gl_liminf_track(Partition(PartitionSpec::harmonic()), s), DomainError);
}

TEST(RenewalReportRows, Columns) {
  Partition h(PartitionSpec::harmonic());
  RenewalReport rep = renewal_report(h, 4);
  ASSERT_EQ(rep.rows.size(), 4u);
  const RenewalRow& r = rep.rows[3];
  EXPECT_EQ(r.n, 4u);
  EXPECT_NEAR(r.w, 251.0 / 720.0, 1e-16);
  EXPECT_NEAR(r.partial_sum_t, 1.0 + 0.5 + 1.0 / 3.0 + 0.25, 1e-15);
  EXPECT_NEAR(r.gl_product, 4.0 * 0.25 * 251.0 / 720.0, 1e-15);
  ASSERT_TRUE(r.strong_ratio.has_value());
  EXPECT_NEAR(*r.strong_ratio, r.w * r.partial_sum_t, 1e-15);
}
