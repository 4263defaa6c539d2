#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace alpha_dyn;
using alpha_dyn::testing::exact_families;
using alpha_dyn::testing::random_rational;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

}  // namespace

// ==== maps and branches ======================================================

TEST(Maps, NamedExamples) {
  Partition h(PartitionSpec::harmonic());
  Partition d(PartitionSpec::dyadic());
  EXPECT_DOUBLE_EQ(farey_map(d, 0.3), 0.6);
  EXPECT_EQ(farey_map(h, q(3, 4)), q(1, 2));
  EXPECT_EQ(farey_map(h, q(0)), q(0));
  EXPECT_EQ(farey_map(d, 0.0), 0.0);
  EXPECT_EQ(luroth_map(h, q(1, 2)), q(0));
  EXPECT_EQ(luroth_map(h, q(3, 4)), q(1, 2));
  EXPECT_NEAR(luroth_map(d, 0.3), 0.8, 1e-15);

  EXPECT_EQ(inverse_branch_farey(h, 1, q(0)), q(1));
  EXPECT_EQ(inverse_branch_luroth(h, 3, q(0)), q(1, 3));
  EXPECT_EQ(inverse_branch_farey(d, 0, q(1)), q(1, 2));
  EXPECT_THROW(inverse_branch_farey(h, 2, q(1, 2)), DomainError);
  EXPECT_THROW(farey_map(h, 1.5), DomainError);
}

TEST(Maps, InverseBranchesInvertForwardMaps) {
  for (const auto& f : exact_families()) {
    Partition p(f.spec);
    for (std::uint64_t k = 0; k < 300; ++k) {
      Rational x = random_rational(11, k);
      ASSERT_EQ(farey_map(p, inverse_branch_farey(p, 1, x)), x) << f.name;
      ASSERT_EQ(farey_map(p, inverse_branch_farey(p, 0, x)), x) << f.name;
      u64 n = 1 + k % 9;
      ASSERT_EQ(luroth_map(p, inverse_branch_luroth(p, n, x)), x) << f.name;
    }
  }
}

// ==== expansions =============================================================

TEST(Expansion, NamedExamples) {
  Partition h(PartitionSpec::harmonic());
  Partition d(PartitionSpec::dyadic());
  DigitWord w = expand(h, q(1, 2), 30);
  EXPECT_EQ(w.digits, (std::vector<u64>{2}));
  EXPECT_TRUE(w.terminated());
  w = expand(h, q(3, 4), 30);
  EXPECT_EQ(w.digits, (std::vector<u64>{1, 2}));
  EXPECT_TRUE(w.terminated());
  w = expand(d, q(1), 30);
  EXPECT_EQ(w.digits, (std::vector<u64>{1}));

  EXPECT_EQ(assemble_exact(h, {1, 2}), q(3, 4));
  EXPECT_EQ(assemble_exact(h, {1, 1, 1}), q(3, 4));
  EXPECT_EQ(assemble_exact(d, {1}), q(1));
  DigitWord twos = DigitWord::prefix({2, 2, 2, 2});
  EXPECT_EQ(convergent_exact(h, twos, 1), q(1, 2));
  EXPECT_EQ(convergent_exact(h, DigitWord::finite({1, 2}), 2), q(3, 4));
  EXPECT_THROW(convergent(h, twos, 5), DomainError);
}

TEST(Expansion, ShiftIdentity) {
  for (const auto& f : exact_families()) {
    Partition p(f.spec);
    for (std::uint64_t k = 0; k < 1000; ++k) {
      Rational x = random_rational(1, k);
      DigitWord w = expand(p, x, 12);
      Rational lx = luroth_map(p, x);
      if (lx == 0) {
        ASSERT_EQ(w.digits.size(), 1u);
        continue;
      }
      DigitWord v = expand(p, lx, 11);
      ASSERT_EQ(std::vector<u64>(w.digits.begin() + 1, w.digits.end()), v.digits) << f.name;
    }
  }
}

TEST(Expansion, FiniteWordsAssembleBack) {
  for (const auto& f : exact_families()) {
    Partition p(f.spec);
    for (std::uint64_t k = 0; k < 300; ++k) {
      Rational x = random_rational(3, k);
      DigitWord w = expand(p, x, 400);
      if (w.terminated()) {
        ASSERT_EQ(assemble_exact(p, w), x) << f.name;
      }
    }
  }
}

TEST(Expansion, DoubleExpansionIdentity) {
  for (const auto& f : exact_families()) {
    Partition p(f.spec);
    SplitMix64 g(5);
    for (std::uint64_t k = 0; k < 200; ++k) {
      std::vector<u64> word;
      std::size_t len = 1 + g.bits(3 * k) % 5;
      for (std::size_t i = 0; i < len; ++i) word.push_back(1 + g.bits(3 * k + 1 + i * 7) % 6);
      std::vector<u64> longer = word;
      longer.push_back(1);
      std::vector<u64> bumped = word;
      ++bumped.back();
      ASSERT_EQ(assemble_exact(p, longer), assemble_exact(p, bumped)) << f.name;
    }
  }
}

TEST(Expansion, CanonicalWordsRoundTrip) {
  // canonical: last digit is not 1 unless the word has length one
  for (const auto& f : exact_families()) {
    Partition p(f.spec);
    SplitMix64 g(9);
    for (std::uint64_t k = 0; k < 200; ++k) {
      std::vector<u64> word;
      std::size_t len = 1 + g.bits(4 * k) % 5;
      for (std::size_t i = 0; i < len; ++i) word.push_back(1 + g.bits(4 * k + 1 + i * 11) % 7);
      if (len > 1 && word.back() == 1) word.back() = 2;
      Rational x = assemble_exact(p, word);
      ASSERT_EQ(p.locate(x), word[0]) << f.name;
      DigitWord w = expand(p, x, 20);
      ASSERT_TRUE(w.terminated());
      ASSERT_EQ(w.digits, word) << f.name;
    }
  }
}

TEST(Expansion, FloatExpansionTracksExact) {
  Partition h(PartitionSpec::harmonic());
  for (std::uint64_t k = 0; k < 200; ++k) {
    double y = to_double(random_rational(17, k));
    Rational x(y);  // the same point, held exactly
    DigitWord fw = expand(h, y, 30);
    DigitWord ew = expand(h, x, fw.digits.size());
    ASSERT_LE(fw.digits.size(), ew.digits.size() + 1);
    // digits agree except possibly the last, which may sit on a boundary
    for (std::size_t i = 0; i + 1 < fw.digits.size(); ++i) ASSERT_EQ(fw.digits[i], ew.digits[i]) << k;
  }
}

TEST(Expansion, ConvergentBound) {
  for (const auto& f : alpha_dyn::testing::all_families()) {
    Partition p(f.spec);
    SplitMix64 g(21);
    for (std::uint64_t k = 0; k < 200; ++k) {
      double x = g.uniform(k);
      DigitWord w = expand(p, x, 8);
      for (std::size_t j = 1; j <= w.digits.size(); ++j) {
        double bound = truncation_bound(p, w.digits, j);
        ASSERT_LE(std::fabs(x - convergent(p, w, j)), bound + 1e-15) << f.name << " x=" << x << " k=" << j;
      }
    }
  }
}

// ==== jump transformation ====================================================

TEST(Jump, NamedExamples) {
  Partition h(PartitionSpec::harmonic());
  Partition d(PartitionSpec::dyadic());
  Partition g(alpha_dyn::testing::geometric_third());
  EXPECT_EQ(jump_time(h, 0.75), 1u);
  EXPECT_EQ(jump_time(h, q(1, 3)), 3u);
  EXPECT_EQ(jump_time(d, 0.3), 2u);
  EXPECT_THROW(jump_time(h, 0.0), DomainError);
  EXPECT_TRUE(jump_identity_check(h, q(3, 4)));
  EXPECT_TRUE(jump_identity_check(d, 0.3, 1e-15));
  EXPECT_TRUE(jump_identity_check(g, q(1, 5)));
}

TEST(Jump, IdentityOnRandomPoints) {
  for (const auto& f : exact_families()) {
    Partition p(f.spec);
    for (std::uint64_t k = 0; k < 1000; ++k) ASSERT_TRUE(jump_identity_check(p, random_rational(2, k))) << f.name;
  }
  for (const auto& f : alpha_dyn::testing::all_families()) {
    Partition p(f.spec);
    SplitMix64 g(4);
    for (std::uint64_t k = 0; k < 1000; ++k) {
      double x = g.uniform(k);
      u64 n = p.locate(x);
      if (n > 20000) continue;  // n Farey steps per point
      // the composite has slope 1/a_n, as does L, so errors scale with t_n/a_n
      double tol = 1e-13 * static_cast<double>(n) * (1.0 + p.tail(n) / p.atom(n));
      ASSERT_TRUE(jump_identity_check(p, x, tol)) << f.name << " x=" << x;
    }
  }
}

// ==== Farey coding ===========================================================

TEST(FareyCoding, Examples) {
  EXPECT_EQ(to_string(farey_code(DigitWord::finite({2, 1}), 3)), "011");
  EXPECT_EQ(to_string(farey_code(DigitWord::finite({3, 2}), 4)), "0010");
  EXPECT_EQ(farey_shift(DigitWord::prefix({3, 2})).digits, (std::vector<u64>{2, 2}));
  EXPECT_EQ(farey_shift(DigitWord::prefix({1, 5})).digits, (std::vector<u64>{5}));
}

TEST(FareyCoding, ShiftMatchesFareyMap) {
  for (const auto& f : exact_families()) {
    Partition p(f.spec);
    for (std::uint64_t k = 0; k < 500; ++k) {
      Rational x = random_rational(8, k);
      DigitWord w = expand(p, x, 12);
      Rational fx = farey_map(p, x);
      DigitWord shifted = farey_shift(w);
      if (fx == 0) continue;
      DigitWord v = expand(p, fx, shifted.digits.size());
      if (!w.terminated()) {
        ASSERT_EQ(v.digits, shifted.digits) << f.name;
      } else {
        ASSERT_EQ(assemble_exact(p, shifted), fx) << f.name;
      }
    }
  }
}

TEST(FareyCoding, CodeCylindersTileTheInterval) {
  // a code of m bits with completed digits l_1..l_k and j trailing zeros is
  // the set C(l_1..l_k) intersected with {next digit > j}
  Partition h(PartitionSpec::harmonic());
  for (int m = 1; m <= 12; ++m) {
    Rational total = 0;
    for (std::uint32_t code = 0; code < (1u << m); ++code) {
      Rational mass = 1;
      u64 run = 0;
      for (int b = 0; b < m; ++b) {
        ++run;
        if (code >> (m - 1 - b) & 1u) {
          mass *= h.atom_exact(run);
          run = 0;
        }
      }
      mass *= run == 0 ? Rational(1) : h.tail_exact(run + 1);
      total += mass;
    }
    EXPECT_EQ(total, q(1)) << "m=" << m;
  }
}

// ==== cylinders ==============================================================

TEST(Cylinders, Examples) {
  Partition h(PartitionSpec::harmonic());
  Partition d(PartitionSpec::dyadic());
  ExactCylinder c = cylinder_exact(h, {1});
  EXPECT_EQ(c.measure, q(1, 2));
  EXPECT_EQ(c.left, q(1, 2));
  EXPECT_EQ(c.right, q(1));
  EXPECT_EQ(cylinder_exact(h, {1, 2}).measure, q(1, 12));
  EXPECT_EQ(cylinder_exact(d, {1, 1, 1}).measure, q(1, 8));
  EXPECT_THROW(cylinder(h, {}), DomainError);
}

TEST(Cylinders, LengthEqualsMeasure) {
  for (const auto& f : exact_families()) {
    Partition p(f.spec);
    SplitMix64 g(13);
    for (std::uint64_t k = 0; k < 200; ++k) {
      std::vector<u64> word;
      std::size_t len = 1 + g.bits(5 * k) % 4;
      for (std::size_t i = 0; i < len; ++i) word.push_back(1 + g.bits(5 * k + 1 + i) % 8);
      ExactCylinder c = cylinder_exact(p, word);
      ASSERT_EQ(c.right - c.left, c.measure) << f.name;
      Cylinder fc = cylinder(p, word);
      ASSERT_NEAR(fc.measure, to_double(c.measure), 1e-14 * fc.measure + 1e-300);
    }
  }
}
