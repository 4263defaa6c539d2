#pragma once

// Conjugacy theta between F_alpha and the tent map, the measure of maximal
// entropy, and the Hoelder exponents of theta.

#include "alpha_dyn/dynamics.hpp"
#include "alpha_dyn/numerics.hpp"
#include "alpha_dyn/partition.hpp"
#include "alpha_dyn/rational.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <variant>

namespace alpha_dyn {

// =============================================================================
// theta
// =============================================================================
//
//   theta(x) = 2 sum_k (-1)^{k+1} 2^{-S_k},   S_k = l_1 + ... + l_k
//
// The terms alternate and decrease, so cutting after K digits leaves an error
// of at most 2^{-S_K}.

struct ThetaValue {
  double value = 0.0;
  double error_bound = 0.0;  // 0 for terminated words
  u64 digit_sum = 0;
};

/// Exact dyadic partial sum over the digits of the word.
inline Rational theta_exact(const DigitWord& w) {
  Rational sum = 0;
  u64 s = 0;
  int sign = 1;
  for (u64 d : w.digits) {
    s += d;
    sum += sign * 2 * dyadic(s);
    sign = -sign;
  }
  return sum;
}

inline ThetaValue theta(const DigitWord& w) {
  ThetaValue out;
  double sum = 0.0;
  int sign = 1;
  u64 s = 0;
  for (u64 d : w.digits) {
    s += d;
    if (s > 1100) break;  // remaining terms below double resolution
    sum += sign * std::ldexp(2.0, -static_cast<int>(s));
    sign = -sign;
  }
  out.value = sum;
  out.digit_sum = w.digit_sum();
  out.error_bound = w.terminated() ? 0.0 : std::ldexp(1.0, -static_cast<int>(std::min<u64>(s, 1100)));
  if (s > 1100) out.error_bound = std::ldexp(1.0, -1074);
  return out;
}

/// Digits needed for an error of at most eps: S >= log2(1/eps) + slack.
inline u64 digit_sum_target(double eps, int slack = 3) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  return static_cast<u64>(std::ceil(std::log2(1.0 / eps))) + slack;
}

/// Expand x until the digit sum reaches the target, using the exact backend
/// when both point and partition are rational.
template <class X>
DigitWord expand_to_digit_sum(const Partition& p, const X& x, u64 target) {
  std::size_t budget = 16;
  for (;;) {
    DigitWord w = expand(p, x, budget);
    if (w.status != ExpansionStatus::Truncated || w.digit_sum() >= target) return w;
    budget *= 2;
    if (budget > (std::size_t{1} << 16)) return w;
  }
}

/// theta of a point with error at most eps (or the achieved bound when the
/// float expansion runs out of precision first).
inline ThetaValue theta_of_point(const Partition& p, const Rational& x, double eps) {
  if (x == 0) return {};
  DigitWord w = p.exact() ? expand_to_digit_sum(p, x, digit_sum_target(eps))
                          : expand_to_digit_sum(p, to_double(x), digit_sum_target(eps));
  return theta(w);
}

// =============================================================================
// Conjugacy check
// =============================================================================

inline double tent_map(double y) { return y <= 0.5 ? 2.0 * y : 2.0 - 2.0 * y; }
inline Rational tent_map(const Rational& y) {
  return y <= Rational(1, 2) ? Rational(2 * y) : Rational(2 - 2 * y);
}

struct ConjugacyResult {
  bool passed = false;
  double discrepancy = 0.0;  // |theta(F x) - T(theta(x))|
  double bound = 0.0;        // truncation bound of the comparison
  bool exact = false;
};

/// theta(F(x)) against T(theta(x)), with the digits of F(x) obtained by the
/// Farey shift of the digits of x.
inline ConjugacyResult conjugacy_check(const Partition& p, const Rational& x, double eps) {
  ConjugacyResult r;
  if (x == 0) {
    r.passed = true;
    r.exact = true;
    return r;
  }
  u64 target = digit_sum_target(eps / 4.0);
  if (p.exact()) {
    DigitWord w = expand_to_digit_sum(p, x, target);
    DigitWord fw = farey_shift(w);
    if (w.terminated()) {
      Rational diff = theta_exact(fw) - tent_map(theta_exact(w));
      r.discrepancy = std::fabs(to_double(diff));
      r.exact = true;
      r.passed = diff == 0;
      return r;
    }
    ThetaValue a = theta(fw), b = theta(w);
    r.discrepancy = std::fabs(a.value - tent_map(b.value));
    r.bound = a.error_bound + 2.0 * b.error_bound;
    r.passed = r.discrepancy <= eps;
    return r;
  }
  DigitWord w = expand_to_digit_sum(p, to_double(x), target);
  DigitWord fw = farey_shift(w);
  ThetaValue a = theta(fw), b = theta(w);
  r.discrepancy = std::fabs(a.value - tent_map(b.value));
  r.bound = a.error_bound + 2.0 * b.error_bound;
  r.passed = r.discrepancy <= eps;
  return r;
}

inline ConjugacyResult conjugacy_check(const Partition& p, double x, double eps) {
  ConjugacyResult r;
  if (x == 0.0) {
    r.passed = true;
    return r;
  }
  DigitWord w = expand_to_digit_sum(p, x, digit_sum_target(eps / 4.0));
  DigitWord fw = farey_shift(w);
  ThetaValue a = theta(fw), b = theta(w);
  r.discrepancy = std::fabs(a.value - tent_map(b.value));
  r.bound = a.error_bound + 2.0 * b.error_bound;
  r.passed = r.discrepancy <= eps;
  return r;
}

// =============================================================================
// Measure of maximal entropy
// =============================================================================

/// 2^{-(l1 + ... + lk)}: mass of the Farey cylinder coded by the word.
inline Rational max_entropy_mass(const DigitWord& w) { return dyadic(w.digit_sum()); }

// =============================================================================
// Hoelder exponents
// =============================================================================
//
//   kappa(n) = -n log 2 / log a_n,   kappa_+ = inf kappa,   kappa_- = sup kappa
//
// The extremes combine a finite search with the limit of kappa(n): infinity
// for expansive partitions, log 2 / log rho for expanding ones.

struct HolderExponents {
  double kappa_plus = 0.0;
  ExtendedReal kappa_minus;
  u64 kappa_plus_at = 0;  // 0 when the infimum is the limit
};

inline double kappa(const Partition& p, u64 n) {
  return -static_cast<double>(n) * std::numbers::ln2 / p.log_atom(n);
}

inline HolderExponents holder_exponents(const Partition& p, u64 n_search = 10000) {
  if (n_search == 0) throw DomainError("holder_exponents: N_search must be >= 1");
  Classification c = p.classify();
  HolderExponents h;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (u64 n = 1; n <= n_search; ++n) {
    double k = kappa(p, n);
    if (k < lo) {
      lo = k;
      h.kappa_plus_at = n;
    }
    hi = std::max(hi, k);
  }
  if (c.tail_kind == TailKind::Expanding) {
    double limit = std::numbers::ln2 / std::log(c.rho);
    if (limit <= lo) {
      lo = limit;
      h.kappa_plus_at = 0;
    }
    hi = std::max(hi, limit);
    h.kappa_minus = ExtendedReal(hi);
  } else {
    h.kappa_minus = ExtendedReal::infinity();
  }
  h.kappa_plus = lo;
  return h;
}

}  // namespace alpha_dyn
