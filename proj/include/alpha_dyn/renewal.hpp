#pragma once

// Sum-level measures w_n = lambda(L_n) through the renewal recursion
//
//   w_0 = 1,   w_n = sum_{m=1}^{n} a_m w_{n-m},
//
// and the asymptotic laws they are checked against.

#include "alpha_dyn/numerics.hpp"
#include "alpha_dyn/partition.hpp"
#include "alpha_dyn/rational.hpp"
#include "alpha_dyn/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace alpha_dyn {

// =============================================================================
// Sequence
// =============================================================================

enum class Backend { Exact, Float };

struct RenewalOptions {
  /// Exact arithmetic continues while w_n has at most this many decimal digits
  /// in numerator and denominator...
  std::size_t exact_digit_cap = 64;
  /// ...and n stays below this bound.
  std::size_t exact_max_n = 512;
  bool use_exact = true;
};

struct RenewalSequence {
  std::vector<double> values;         // w_0..w_N
  std::vector<Rational> exact_values;  // w_0..w_{exact_until}, rational partitions only
  std::size_t exact_until = 0;         // last index held exactly (0 if none beyond w_0)
  Backend backend = Backend::Float;
  std::string switch_note;             // why exact arithmetic stopped, if it did
  double neglected_mass = 0.0;         // bound on the mass of underflowed atoms

  std::size_t size() const { return values.size(); }
  bool is_exact(std::size_t n) const { return backend == Backend::Exact && n <= exact_until; }
};

namespace detail {

/// sum_i x[i] y[i] with eight lanes per block of 512 and a compensated sum of
/// the block results; the reduction order depends only on the length.
inline double blocked_dot(const double* __restrict x, const double* __restrict y, std::size_t len) {
  NeumaierSum total;
  std::size_t i = 0;
  while (i < len) {
    std::size_t end = std::min(len, i + 512);
    double l0 = 0, l1 = 0, l2 = 0, l3 = 0, l4 = 0, l5 = 0, l6 = 0, l7 = 0;
    for (; i + 8 <= end; i += 8) {
      l0 += x[i] * y[i];
      l1 += x[i + 1] * y[i + 1];
      l2 += x[i + 2] * y[i + 2];
      l3 += x[i + 3] * y[i + 3];
      l4 += x[i + 4] * y[i + 4];
      l5 += x[i + 5] * y[i + 5];
      l6 += x[i + 6] * y[i + 6];
      l7 += x[i + 7] * y[i + 7];
    }
    for (; i < end; ++i) l0 += x[i] * y[i];
    total.add(((l0 + l1) + (l2 + l3)) + ((l4 + l5) + (l6 + l7)));
  }
  return total.value();
}

}  // namespace detail

inline RenewalSequence renewal_sequence(const Partition& p, std::size_t N,
                                        const RenewalOptions& opt = {}) {
  if (N < 1) throw DomainError("renewal_sequence: N must be >= 1");
  RenewalSequence seq;

  // ---- float recursion ------------------------------------------------------
  std::vector<double> a(N + 1, 0.0);
  for (std::size_t m = 1; m <= N; ++m) {
    a[m] = p.atom_or_zero(m);
    if (a[m] == 0.0 && seq.neglected_mass == 0.0) seq.neglected_mass = p.tail_or_zero(m);
  }
  // w stored reversed so both dot operands run forward
  std::vector<double> rev(N + 1, 0.0);
  seq.values.assign(N + 1, 0.0);
  seq.values[0] = 1.0;
  rev[N] = 1.0;
  for (std::size_t n = 1; n <= N; ++n) {
    // sum_{m=1}^{n} a_m w_{n-m};  w_{n-m} = rev[N-n+m]
    double w = detail::blocked_dot(&a[1], &rev[N - n + 1], n);
    seq.values[n] = w;
    rev[N - n] = w;
  }

  // ---- exact prefix -----------------------------------------------------------
  if (opt.use_exact && p.exact()) {
    seq.backend = Backend::Exact;
    std::size_t limit = std::min(N, opt.exact_max_n);
    std::vector<Rational> ea(limit + 1);
    for (std::size_t m = 1; m <= limit; ++m) ea[m] = p.atom_exact(m);
    seq.exact_values.push_back(Rational(1));
    for (std::size_t n = 1; n <= limit; ++n) {
      Rational w = 0;
      for (std::size_t m = 1; m <= n; ++m) w += ea[m] * seq.exact_values[n - m];
      if (decimal_digits(w) > opt.exact_digit_cap) {
        seq.switch_note = "exact arithmetic stopped at n=" + std::to_string(n) + ": w_n exceeds " +
                          std::to_string(opt.exact_digit_cap) + " digits";
        break;
      }
      seq.exact_values.push_back(w);
      seq.exact_until = n;
    }
    if (seq.switch_note.empty() && limit < N)
      seq.switch_note = "exact arithmetic stopped at n=" + std::to_string(limit + 1) +
                        ": index cap " + std::to_string(opt.exact_max_n);
    for (std::size_t n = 1; n <= seq.exact_until; ++n) seq.values[n] = to_double(seq.exact_values[n]);
  }
  return seq;
}

// =============================================================================
// Composition oracle
// =============================================================================

/// lambda(L_n) as the sum over all compositions (l_1..l_k) of n of prod a_{l_i},
/// by depth-first enumeration. Independent of the recursion.
inline Rational composition_oracle_exact(const Partition& p, unsigned n) {
  if (n > 22) throw DomainError("composition_oracle: n must be <= 22");
  std::vector<Rational> a(n + 1);
  for (unsigned m = 1; m <= n; ++m) a[m] = p.atom_exact(m);
  Rational total = 0;
  // iterative DFS over (remaining, running product)
  struct Frame {
    unsigned remaining;
    Rational product;
  };
  std::vector<Frame> stack;
  stack.push_back({n, Rational(1)});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.remaining == 0) {
      total += f.product;
      continue;
    }
    for (unsigned l = 1; l <= f.remaining; ++l) stack.push_back({f.remaining - l, f.product * a[l]});
  }
  return total;
}

inline double composition_oracle(const Partition& p, unsigned n) {
  if (n > 22) throw DomainError("composition_oracle: n must be <= 22");
  std::vector<double> a(n + 1);
  for (unsigned m = 1; m <= n; ++m) a[m] = p.atom(m);
  double total = 0.0;
  auto dfs = [&](auto&& self, unsigned remaining, double product) -> void {
    if (remaining == 0) {
      total += product;
      return;
    }
    for (unsigned l = 1; l <= remaining; ++l) self(self, remaining - l, product * a[l]);
  };
  dfs(dfs, n, 1.0);
  return total;
}

// =============================================================================
// Renewal laws
// =============================================================================

/// lim w_n: 1 / sum t_k for finite type, 0 otherwise.
inline double limit_prediction(const Partition& p) {
  if (p.classify().type_class == TypeClass::Infinite) return 0.0;
  return 1.0 / p.tail_sum().value();
}

/// Expansive exponent restricted to the renewal theory range; nullopt for
/// finite type.
inline std::optional<double> renewal_theta(const Partition& p) {
  Classification c = p.classify();
  if (c.type_class == TypeClass::Finite) return std::nullopt;
  if (c.tail_kind != TailKind::Expansive) throw DomainError("renewal laws need an expansive or finite-type partition");
  return c.theta;
}

/// K_alpha = 1/(Gamma(2-theta) Gamma(1+theta)), or 1 for finite type.
inline double weak_law_constant(const Partition& p) {
  auto th = renewal_theta(p);
  if (!th) return 1.0;
  if (*th < 0.0 || *th > 1.0) throw DomainError("weak law needs theta in [0,1]");
  return 1.0 / (gamma_function(2.0 - *th) * gamma_function(1.0 + *th));
}

/// k_alpha = 1/(Gamma(2-theta) Gamma(theta)), or 1 for finite type. Refuses
/// theta <= 1/2, where the strong law is not guaranteed.
inline double strong_law_constant(const Partition& p) {
  auto th = renewal_theta(p);
  if (!th) return 1.0;
  if (*th <= 0.5 || *th > 1.0) throw DomainError("strong law not guaranteed for theta outside (1/2, 1]");
  return 1.0 / (gamma_function(2.0 - *th) * gamma_function(*th));
}

inline bool strong_law_applies(const Partition& p) {
  auto th = renewal_theta(p);
  return !th || (*th > 0.5 && *th <= 1.0);
}

/// Row-wise quantities of the renewal report.
struct RenewalRow {
  std::size_t n = 0;
  double w = 0.0;
  double partial_sum_w = 0.0;
  double partial_sum_t = 0.0;
  double weak_ratio = 0.0;
  std::optional<double> strong_ratio;
  double gl_product = 0.0;  // n t_n w_n
};

struct RenewalReport {
  RenewalSequence sequence;
  std::vector<RenewalRow> rows;  // rows[n-1] for n = 1..N
  double weak_constant = 1.0;
  std::optional<double> strong_constant;
};

inline RenewalReport renewal_report(const Partition& p, std::size_t N, const RenewalOptions& opt = {}) {
  RenewalReport rep;
  rep.sequence = renewal_sequence(p, N, opt);
  rep.weak_constant = weak_law_constant(p);
  if (strong_law_applies(p)) rep.strong_constant = strong_law_constant(p);
  NeumaierSum sw, st;
  rep.rows.reserve(N);
  for (std::size_t n = 1; n <= N; ++n) {
    double w = rep.sequence.values[n];
    double t = p.tail_or_zero(n);
    sw.add(w);
    st.add(t);
    RenewalRow r;
    r.n = n;
    r.w = w;
    r.partial_sum_w = sw.value();
    r.partial_sum_t = st.value();
    r.weak_ratio = r.partial_sum_w * r.partial_sum_t / (rep.weak_constant * static_cast<double>(n));
    if (rep.strong_constant) r.strong_ratio = w * r.partial_sum_t / *rep.strong_constant;
    r.gl_product = static_cast<double>(n) * t * w;
    rep.rows.push_back(r);
  }
  return rep;
}

/// (sum_{k<=n} w_k)(sum_{k<=n} t_k) / (K_alpha n).
inline double weak_law_ratio(const Partition& p, const RenewalSequence& seq, std::size_t n) {
  if (n < 1 || n >= seq.size()) throw DomainError("weak_law_ratio: n outside the computed range");
  NeumaierSum sw, st;
  for (std::size_t k = 1; k <= n; ++k) {
    sw.add(seq.values[k]);
    st.add(p.tail_or_zero(k));
  }
  return sw.value() * st.value() / (weak_law_constant(p) * static_cast<double>(n));
}

/// w_n (sum_{k<=n} t_k) / k_alpha.
inline double strong_law_ratio(const Partition& p, const RenewalSequence& seq, std::size_t n) {
  if (n < 1 || n >= seq.size()) throw DomainError("strong_law_ratio: n outside the computed range");
  double k = strong_law_constant(p);
  return seq.values[n] * p.partial_tail_sum(n).partial / k;
}

/// Running minima of n t_n w_n for n = 1..N, to compare with sin(pi theta)/pi.
inline std::vector<double> gl_liminf_track(const Partition& p, const RenewalSequence& seq) {
  Classification c = p.classify();
  if (c.tail_kind != TailKind::Expansive || !(c.theta > 0.0 && c.theta < 1.0))
    throw DomainError("gl_liminf_track needs an expansive partition with theta in (0,1)");
  std::vector<double> track;
  track.reserve(seq.size());
  double run = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n < seq.size(); ++n) {
    double v = static_cast<double>(n) * p.tail(n) * seq.values[n];
    run = std::min(run, v);
    track.push_back(run);
  }
  return track;
}

inline double gl_target(double theta) { return std::sin(std::numbers::pi * theta) / std::numbers::pi; }

}  // namespace alpha_dyn
