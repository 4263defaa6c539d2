#pragma once

// Monte-Carlo Birkhoff averages over alpha-Lueroth digits, the Lyapunov
// estimates built on them, the invariant density identity, and empirical
// sum-level frequencies.
//
// Lebesgue-typical digits are i.i.d. with P(l = k) = a_k, so long orbits are
// drawn symbolically: u uniform on (0,1], digit = the n with u in A_n.

#include "alpha_dyn/dynamics.hpp"
#include "alpha_dyn/numerics.hpp"
#include "alpha_dyn/parallel.hpp"
#include "alpha_dyn/partition.hpp"
#include "alpha_dyn/rational.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

namespace alpha_dyn {

// =============================================================================
// RNG
// =============================================================================
//
// Counter-based SplitMix64: the k-th draw of stream s under seed x is
//
//   mix(key + (k+1) * 0x9E3779B97F4A7C15),   key = mix(x ^ (s * 0xD1B54A32D192ED03))
//
// with mix the SplitMix64 finalizer (0xBF58476D1CE4E5B9, 0x94D049BB133111EB).
// Uniforms are ((h >> 11) + 1) * 2^-53 in (0, 1].

struct SplitMix64 {
  static constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t stream_mult = 0xD1B54A32D192ED03ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key;

  explicit constexpr SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
      : key(mix(seed ^ (stream * stream_mult))) {}

  constexpr std::uint64_t bits(std::uint64_t k) const { return mix(key + (k + 1) * gamma); }
  double uniform(std::uint64_t k) const { return static_cast<double>((bits(k) >> 11) + 1) * 0x1.0p-53; }
};

/// Digit of a uniform u in (0,1] as a real (digits beyond 2^53 are not
/// representable as exact integers anyway).
inline double digit_of_uniform(const Partition& p, double u) { return p.locate_real(u); }

// =============================================================================
// Trajectory statistics
// =============================================================================

struct RunningMeans {
  u64 n = 0;
  double mean_digit = 0.0;
  double mean_log_digit = 0.0;
  double mean_neg_log_atom = 0.0;
  double farey_quotient = 0.0;  // mean_neg_log_atom / mean_digit
};

struct TrajectoryStats {
  u64 n_steps = 0;
  std::uint64_t seed = 0;
  std::map<u64, u64> digit_histogram;  // digits above 2^64 saturate at the largest key
  double mean_digit = 0.0;
  double mean_log_digit = 0.0;
  double mean_neg_log_atom = 0.0;
  double var_log_digit = 0.0;
  double var_neg_log_atom = 0.0;
  double var_digit = 0.0;
  double cov_digit_neg_log_atom = 0.0;
  double max_digit = 0.0;
  std::vector<RunningMeans> decades;  // n = 10, 100, ..., and n_steps
};

namespace detail {

struct MomentSums {
  NeumaierSum d, d2, ld, ld2, x, x2, dx;
  void add(double digit, double log_digit, double neg_log_atom) {
    d.add(digit);
    d2.add(digit * digit);
    ld.add(log_digit);
    ld2.add(log_digit * log_digit);
    x.add(neg_log_atom);
    x2.add(neg_log_atom * neg_log_atom);
    dx.add(digit * neg_log_atom);
  }
  void merge(const MomentSums& o) {
    d.add(o.d.value());
    d2.add(o.d2.value());
    ld.add(o.ld.value());
    ld2.add(o.ld2.value());
    x.add(o.x.value());
    x2.add(o.x2.value());
    dx.add(o.dx.value());
  }
};

struct Block {
  MomentSums sums;
  std::map<u64, u64> histogram;
  double max_digit = 0.0;
  std::vector<std::pair<u64, MomentSums>> snapshots;  // global index -> partial sums within block
};

inline RunningMeans means_of(u64 n, const MomentSums& s) {
  RunningMeans r;
  r.n = n;
  double k = static_cast<double>(n);
  r.mean_digit = s.d.value() / k;
  r.mean_log_digit = s.ld.value() / k;
  r.mean_neg_log_atom = s.x.value() / k;
  r.farey_quotient = r.mean_neg_log_atom / r.mean_digit;
  return r;
}

inline bool is_decade(u64 n) {
  while (n >= 10 && n % 10 == 0) n /= 10;
  return n == 1 && n != 0;
}

}  // namespace detail

constexpr u64 sample_block_size = 65536;

/// n i.i.d. digits drawn from stream 0 of the seed. Blocks of 65536 draws are
/// reduced independently and merged in order, so the result does not depend on
/// the worker count.
inline TrajectoryStats sample_digits(const Partition& p, u64 n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample_digits: n must be >= 1");
  const SplitMix64 rng(seed);
  const u64 n_blocks = (n + sample_block_size - 1) / sample_block_size;
  std::vector<detail::Block> blocks(n_blocks);
  parallel_for(n_blocks, [&](std::size_t b) {
    detail::Block& blk = blocks[b];
    u64 begin = b * sample_block_size, end = std::min(n, begin + sample_block_size);
    for (u64 k = begin; k < end; ++k) {
      double d = digit_of_uniform(p, rng.uniform(k));
      double nla = -p.log_atom_real(d);
      blk.sums.add(d, std::log(d), nla);
      u64 key = d < 1.8e19 ? static_cast<u64>(d) : std::numeric_limits<u64>::max();
      ++blk.histogram[key];
      blk.max_digit = std::max(blk.max_digit, d);
      if (detail::is_decade(k + 1)) blk.snapshots.emplace_back(k + 1, blk.sums);
    }
  });

  TrajectoryStats st;
  st.n_steps = n;
  st.seed = seed;
  detail::MomentSums total;
  for (const detail::Block& blk : blocks) {
    for (const auto& [idx, partial] : blk.snapshots) {
      detail::MomentSums s = total;
      s.merge(partial);
      st.decades.push_back(detail::means_of(idx, s));
    }
    total.merge(blk.sums);
    for (const auto& [k, c] : blk.histogram) st.digit_histogram[k] += c;
    st.max_digit = std::max(st.max_digit, blk.max_digit);
  }
  if (st.decades.empty() || st.decades.back().n != n) st.decades.push_back(detail::means_of(n, total));

  double k = static_cast<double>(n);
  RunningMeans m = detail::means_of(n, total);
  st.mean_digit = m.mean_digit;
  st.mean_log_digit = m.mean_log_digit;
  st.mean_neg_log_atom = m.mean_neg_log_atom;
  auto var = [&](double sum2, double mean) { return std::max(0.0, sum2 / k - mean * mean) * k / std::max(1.0, k - 1.0); };
  st.var_digit = var(total.d2.value(), st.mean_digit);
  st.var_log_digit = var(total.ld2.value(), st.mean_log_digit);
  st.var_neg_log_atom = var(total.x2.value(), st.mean_neg_log_atom);
  st.cov_digit_neg_log_atom = (total.dx.value() / k - st.mean_digit * st.mean_neg_log_atom) * k / std::max(1.0, k - 1.0);
  return st;
}

/// Relative frequency of digit k.
inline double digit_frequency(const TrajectoryStats& st, u64 k) {
  auto it = st.digit_histogram.find(k);
  return it == st.digit_histogram.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(st.n_steps);
}

// =============================================================================
// Lyapunov estimates
// =============================================================================

struct LyapunovEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  ExtendedReal target;
};

/// Mean of -log a_{l_j}; target -sum a_k log a_k.
inline LyapunovEstimate luroth_lyapunov_estimate(const Partition& p, const TrajectoryStats& st) {
  LyapunovEstimate e;
  e.estimate = st.mean_neg_log_atom;
  e.standard_error = std::sqrt(st.var_neg_log_atom / static_cast<double>(st.n_steps));
  SeriesValue s = p.series(1.0, p.asymptotics().rate, Weight{0, 0, 1});
  e.target = s.finite ? ExtendedReal(-s.value()) : ExtendedReal::infinity();
  return e;
}

/// Quotient mean(-log a_l) / mean(l). Target (-sum a log a)/(sum t_k) for finite
/// type, 0 for infinite type (the denominator diverges).
inline LyapunovEstimate farey_lyapunov_estimate(const Partition& p, const TrajectoryStats& st) {
  LyapunovEstimate e;
  double q = st.mean_neg_log_atom / st.mean_digit;
  e.estimate = q;
  // delta method: Var(X - q D) / (n E[D]^2)
  double v = st.var_neg_log_atom - 2.0 * q * st.cov_digit_neg_log_atom + q * q * st.var_digit;
  e.standard_error = std::sqrt(std::max(0.0, v) / static_cast<double>(st.n_steps)) / st.mean_digit;
  if (p.classify().type_class == TypeClass::Infinite) {
    e.target = ExtendedReal(0.0);
  } else {
    double rate = p.asymptotics().rate;
    SeriesValue num = p.series(1.0, rate, Weight{0, 0, 1});
    SeriesValue den = p.series(1.0, rate, Weight{1, 0, 0});
    e.target = ExtendedReal(std::exp(num.log_abs - den.log_abs));
  }
  return e;
}

// =============================================================================
// Invariant density
// =============================================================================
//
//   phi = sum_n (t_n / a_n) 1_{A_n},
//   R phi(x) = a_1 phi(F_1 x) + (a_{n+1}/a_n) phi(F_0 x),   x in A_n

struct DensityCheck {
  double max_residual = 0.0;
  bool exact = false;
  u64 atoms_checked = 0;
  double mass_partial = 0.0;  // sum_{k<=n_atoms} nu(A_k)
  ExtendedReal mass_remainder;
  double mass_error = 0.0;
};

inline DensityCheck invariant_density_check(const Partition& p, u64 n_atoms) {
  if (n_atoms < 1) throw DomainError("invariant_density_check: n_atoms must be >= 1");
  DensityCheck out;
  out.atoms_checked = n_atoms;
  if (p.exact()) {
    out.exact = true;
    auto phi = [&](const Rational& y) {
      u64 k = p.locate(y);
      return Rational(p.tail_exact(k) / p.atom_exact(k));
    };
    Rational worst = 0;
    for (u64 n = 1; n <= n_atoms; ++n) {
      Rational x = (p.tail_exact(n) + p.tail_exact(n + 1)) / 2;
      Rational r = p.atom_exact(1) * phi(inverse_branch_farey(p, 1, x)) +
                   p.atom_exact(n + 1) / p.atom_exact(n) * phi(inverse_branch_farey(p, 0, x));
      Rational res = abs(r - phi(x));
      if (res > worst) worst = res;
    }
    out.max_residual = to_double(worst);
  } else {
    auto phi = [&](double y) {
      u64 k = p.locate(y);
      return p.tail(k) / p.atom(k);
    };
    for (u64 n = 1; n <= n_atoms; ++n) {
      double x = 0.5 * (p.tail(n) + p.tail(n + 1));
      double r = p.atom(1) * phi(inverse_branch_farey(p, 1, x)) +
                 p.atom(n + 1) / p.atom(n) * phi(inverse_branch_farey(p, 0, x));
      double ref = phi(x);
      out.max_residual = std::max(out.max_residual, std::fabs(r - ref) / ref);
    }
  }
  // nu(A_k) = (t_k / a_k) * a_k = t_k
  PartialTailSum pts = p.partial_tail_sum(n_atoms);
  out.mass_partial = pts.partial;
  out.mass_remainder = pts.remainder;
  out.mass_error = pts.partial_error + pts.remainder_error;
  return out;
}

// =============================================================================
// Sum-level frequencies
// =============================================================================

struct FrequencyEstimate {
  double frequency = 0.0;
  double standard_error = 0.0;
  u64 hits = 0;
  u64 samples = 0;
};

/// Fraction of sampled points whose digit prefix sums hit n_level exactly.
/// Sample j draws its digits from stream j + 1 of the seed.
inline FrequencyEstimate sum_level_frequency(const Partition& p, u64 n_level, u64 n_samples, std::uint64_t seed) {
  if (n_level < 1 || n_samples < 1) throw DomainError("sum_level_frequency: n_level and n_samples must be >= 1");
  const u64 n_blocks = (n_samples + sample_block_size - 1) / sample_block_size;
  std::vector<u64> hits(n_blocks, 0);
  const double level = static_cast<double>(n_level);
  parallel_for(n_blocks, [&](std::size_t b) {
    u64 begin = b * sample_block_size, end = std::min(n_samples, begin + sample_block_size);
    for (u64 j = begin; j < end; ++j) {
      SplitMix64 rng(seed, j + 1);
      double sum = 0.0;
      for (u64 k = 0; sum < level; ++k) sum += digit_of_uniform(p, rng.uniform(k));
      if (sum == level) ++hits[b];
    }
  });
  FrequencyEstimate f;
  f.samples = n_samples;
  for (u64 h : hits) f.hits += h;
  f.frequency = static_cast<double>(f.hits) / static_cast<double>(n_samples);
  f.standard_error = std::sqrt(std::max(f.frequency * (1.0 - f.frequency), 1.0 / static_cast<double>(n_samples)) /
                               static_cast<double>(n_samples));
  return f;
}

// =============================================================================
// Short float orbits
// =============================================================================

constexpr std::size_t max_float_orbit = 50;

/// x, L(x), L^2(x), ... by float iteration; only meaningful for short runs.
inline std::vector<double> luroth_orbit(const Partition& p, double x, std::size_t steps) {
  if (steps > max_float_orbit) throw DomainError("luroth_orbit: float orbits are limited to 50 steps");
  std::vector<double> orbit{x};
  for (std::size_t i = 0; i < steps && x > 0.0; ++i) {
    x = luroth_map(p, x);
    orbit.push_back(x);
  }
  return orbit;
}

}  // namespace alpha_dyn
