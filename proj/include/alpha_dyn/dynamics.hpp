#pragma once

// alpha-Farey and alpha-Lueroth maps, their inverse branches, digit expansions,
// cylinders and the Farey coding.

#include "alpha_dyn/numerics.hpp"
#include "alpha_dyn/partition.hpp"
#include "alpha_dyn/rational.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace alpha_dyn {

// =============================================================================
// Maps
// =============================================================================

/// F(x) = (1-x)/a_1 on A_1, a_{n-1}(x - t_{n+1})/a_n + t_n on A_n (n >= 2), F(0) = 0.
inline double farey_map(const Partition& p, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("farey_map: x must lie in [0,1]");
  if (x == 0.0) return 0.0;
  u64 n = p.locate(x);
  if (n == 1) return (1.0 - x) / p.atom(1);
  return p.atom(n - 1) * (x - p.tail(n + 1)) / p.atom(n) + p.tail(n);
}

inline Rational farey_map(const Partition& p, const Rational& x) {
  if (!(x >= 0 && x <= 1)) throw DomainError("farey_map: x must lie in [0,1]");
  if (x == 0) return Rational(0);
  u64 n = p.locate(x);
  if (n == 1) return (1 - x) / p.atom_exact(1);
  return p.atom_exact(n - 1) * (x - p.tail_exact(n + 1)) / p.atom_exact(n) + p.tail_exact(n);
}

/// L(x) = (t_n - x)/a_n on A_n, L(0) = 0.
inline double luroth_map(const Partition& p, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("luroth_map: x must lie in [0,1]");
  if (x == 0.0) return 0.0;
  u64 n = p.locate(x);
  return (p.tail(n) - x) / p.atom(n);
}

inline Rational luroth_map(const Partition& p, const Rational& x) {
  if (!(x >= 0 && x <= 1)) throw DomainError("luroth_map: x must lie in [0,1]");
  if (x == 0) return Rational(0);
  u64 n = p.locate(x);
  return (p.tail_exact(n) - x) / p.atom_exact(n);
}

// ---- inverse branches ---------------------------------------------------------

/// F_{alpha,1}(x) = 1 - a_1 x for b = 1; F_{alpha,0}(x) = a_{n+1}/a_n (x - t_{n+1}) + t_{n+2}
/// on A_n for b = 0, with F_{alpha,0}(0) = 0.
inline double inverse_branch_farey(const Partition& p, int b, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("inverse_branch_farey: x must lie in [0,1]");
  if (b == 1) return 1.0 - p.atom(1) * x;
  if (b != 0) throw DomainError("inverse_branch_farey: branch must be 0 or 1");
  if (x == 0.0) return 0.0;
  u64 n = p.locate(x);
  return p.atom(n + 1) / p.atom(n) * (x - p.tail(n + 1)) + p.tail(n + 2);
}

inline Rational inverse_branch_farey(const Partition& p, int b, const Rational& x) {
  if (!(x >= 0 && x <= 1)) throw DomainError("inverse_branch_farey: x must lie in [0,1]");
  if (b == 1) return 1 - p.atom_exact(1) * x;
  if (b != 0) throw DomainError("inverse_branch_farey: branch must be 0 or 1");
  if (x == 0) return Rational(0);
  u64 n = p.locate(x);
  return p.atom_exact(n + 1) / p.atom_exact(n) * (x - p.tail_exact(n + 1)) + p.tail_exact(n + 2);
}

/// L_{alpha,n}(x) = t_n - a_n x.
inline double inverse_branch_luroth(const Partition& p, u64 n, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("inverse_branch_luroth: x must lie in [0,1]");
  return p.tail(n) - p.atom(n) * x;
}

inline Rational inverse_branch_luroth(const Partition& p, u64 n, const Rational& x) {
  if (!(x >= 0 && x <= 1)) throw DomainError("inverse_branch_luroth: x must lie in [0,1]");
  return p.tail_exact(n) - p.atom_exact(n) * x;
}

// =============================================================================
// Digit words
// =============================================================================

enum class ExpansionStatus {
  Terminated,          // an iterate hit 0 exactly
  PossiblyTerminated,  // float residue within its error bound of 0 or of an atom end
  Truncated,           // digit budget reached
  PrecisionExhausted,  // float error bound straddles an atom boundary
};

inline const char* to_string(ExpansionStatus s) {
  switch (s) {
    case ExpansionStatus::Terminated: return "terminated";
    case ExpansionStatus::PossiblyTerminated: return "possibly-terminated";
    case ExpansionStatus::Truncated: return "truncated";
    case ExpansionStatus::PrecisionExhausted: return "precision-exhausted";
  }
  return "?";
}

struct DigitWord {
  std::vector<u64> digits;
  ExpansionStatus status = ExpansionStatus::Truncated;
  /// Bound on |L^k(x) - residue| after the last digit (float backend).
  double residue_error = 0.0;

  bool terminated() const { return status == ExpansionStatus::Terminated; }
  u64 digit_sum() const {
    u64 s = 0;
    for (u64 d : digits) s += d;
    return s;
  }

  static DigitWord finite(std::vector<u64> d) {
    DigitWord w;
    w.digits = std::move(d);
    w.status = ExpansionStatus::Terminated;
    return w;
  }
  static DigitWord prefix(std::vector<u64> d) {
    DigitWord w;
    w.digits = std::move(d);
    w.status = ExpansionStatus::Truncated;
    return w;
  }
};

inline std::string to_string(const DigitWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.digits.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(w.digits[i]);
  }
  return s;
}

// =============================================================================
// Expansion
// =============================================================================

/// Digits of a rational point by exact iteration of L.
inline DigitWord expand(const Partition& p, const Rational& x, std::size_t max_digits) {
  if (!(x > 0 && x <= 1)) throw DomainError("expand: x must lie in (0,1]");
  if (!p.exact()) throw DomainError("expand: exact expansion needs a rational partition");
  DigitWord w;
  Rational r = x;
  while (w.digits.size() < max_digits) {
    u64 n = p.locate(r);
    w.digits.push_back(n);
    r = (p.tail_exact(n) - r) / p.atom_exact(n);
    if (r == 0) {
      w.status = ExpansionStatus::Terminated;
      return w;
    }
  }
  w.status = ExpansionStatus::Truncated;
  return w;
}

/// Digits of a float point. Each digit is extracted by locate on the current
/// residue; the residue is recomputed as (t_n - x)/a_n with a running error
/// bound, and expansion stops as soon as that bound reaches an atom boundary.
inline DigitWord expand(const Partition& p, double x, std::size_t max_digits) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError("expand: x must lie in (0,1]");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto tail_err = [&](u64 n) { return n == 1 ? 0.0 : 2.0 * eps * p.tail(n); };
  DigitWord w;
  double r = x;
  double err = 0.0;
  while (w.digits.size() < max_digits) {
    if (r <= err) {
      w.status = ExpansionStatus::PossiblyTerminated;
      w.residue_error = err;
      return w;
    }
    if (r > 1.0) r = 1.0;
    u64 n = p.locate(r);
    double hi = p.tail(n);
    double lo = p.tail_or_zero(n + 1);
    // residue within error of t_n: the point may be the alpha-rational [.., n]
    if (hi - r <= err + tail_err(n)) {
      w.digits.push_back(n);
      w.status = ExpansionStatus::PossiblyTerminated;
      w.residue_error = err;
      return w;
    }
    // residue within error of t_{n+1}: may be [.., n+1]
    if (r - lo <= err + tail_err(n + 1)) {
      w.digits.push_back(n + 1);
      w.status = ExpansionStatus::PossiblyTerminated;
      w.residue_error = err;
      return w;
    }
    double a = p.atom(n);
    w.digits.push_back(n);
    double next = (hi - r) / a;
    err = (err + tail_err(n) + eps * (hi - r)) / a + next * 6.0 * eps;
    r = next;
    if (err >= 0.25) {
      w.status = ExpansionStatus::PrecisionExhausted;
      w.residue_error = err;
      return w;
    }
  }
  w.status = ExpansionStatus::Truncated;
  w.residue_error = err;
  return w;
}

// =============================================================================
// Assembly and convergents
// =============================================================================

/// t_{l1} - a_{l1} t_{l2} + a_{l1} a_{l2} t_{l3} - ..., evaluated from the right
/// as L_{l1}(L_{l2}(...L_{lk}(0))).
inline double assemble(const Partition& p, const std::vector<u64>& digits) {
  if (digits.empty()) return 0.0;
  double y = 0.0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) y = p.tail(*it) - p.atom(*it) * y;
  return y;
}
inline double assemble(const Partition& p, const DigitWord& w) { return assemble(p, w.digits); }

inline Rational assemble_exact(const Partition& p, const std::vector<u64>& digits) {
  Rational y = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it)
    y = p.tail_exact(*it) - p.atom_exact(*it) * y;
  return y;
}
inline Rational assemble_exact(const Partition& p, const DigitWord& w) {
  return assemble_exact(p, w.digits);
}

/// prod_{i<=k} a_{l_i}; bounds |x - r_k| for any x whose expansion starts with the word.
inline double truncation_bound(const Partition& p, const std::vector<u64>& digits, std::size_t k) {
  double log_prod = 0.0;
  for (std::size_t i = 0; i < k && i < digits.size(); ++i) log_prod += p.log_atom(digits[i]);
  return std::exp(log_prod);
}

/// The k-th convergent r_k: assembly of the first k digits.
inline double convergent(const Partition& p, const DigitWord& w, std::size_t k) {
  if (k > w.digits.size()) throw DomainError("convergent: word has fewer than k digits");
  return assemble(p, std::vector<u64>(w.digits.begin(), w.digits.begin() + k));
}

inline Rational convergent_exact(const Partition& p, const DigitWord& w, std::size_t k) {
  if (k > w.digits.size()) throw DomainError("convergent: word has fewer than k digits");
  return assemble_exact(p, std::vector<u64>(w.digits.begin(), w.digits.begin() + k));
}

// =============================================================================
// Jump transformation
// =============================================================================

/// rho(x) = inf{n >= 0 : F^n(x) in A_1} + 1, which is the first digit of x.
inline u64 jump_time(const Partition& p, double x) {
  if (x == 0.0) throw DomainError("jump_time: undefined at x = 0");
  return p.locate(x);
}
inline u64 jump_time(const Partition& p, const Rational& x) {
  if (x == 0) throw DomainError("jump_time: undefined at x = 0");
  return p.locate(x);
}

/// |F^{rho(x)}(x) - L(x)| <= tol.
inline bool jump_identity_check(const Partition& p, double x, double tol) {
  u64 rho = jump_time(p, x);
  double y = x;
  for (u64 i = 0; i < rho; ++i) y = farey_map(p, y);
  return std::fabs(y - luroth_map(p, x)) <= tol;
}

/// Exact equality F^{rho(x)}(x) == L(x).
inline bool jump_identity_check(const Partition& p, const Rational& x) {
  u64 rho = jump_time(p, x);
  Rational y = x;
  for (u64 i = 0; i < rho; ++i) y = farey_map(p, y);
  return y == luroth_map(p, x);
}

// =============================================================================
// Farey coding
// =============================================================================

struct FareyCode {
  std::vector<std::uint8_t> bits;
};

inline std::string to_string(const FareyCode& c) {
  std::string s;
  s.reserve(c.bits.size());
  for (auto b : c.bits) s += b ? '1' : '0';
  return s;
}

/// 0^{l1-1} 1 0^{l2-1} 1 ..., cut after m bits.
inline FareyCode farey_code(const DigitWord& w, std::size_t m) {
  FareyCode c;
  for (u64 d : w.digits) {
    for (u64 i = 1; i < d && c.bits.size() < m; ++i) c.bits.push_back(0);
    if (c.bits.size() >= m) break;
    c.bits.push_back(1);
  }
  return c;
}

/// Action of F on digits: [l1-1, l2, ...] when l1 >= 2, [l2, ...] when l1 = 1.
inline DigitWord farey_shift(const DigitWord& w) {
  if (w.digits.empty()) return w;
  DigitWord out = w;
  if (out.digits.front() >= 2)
    --out.digits.front();
  else
    out.digits.erase(out.digits.begin());
  return out;
}

// =============================================================================
// Cylinders
// =============================================================================

/// C(l1..lk): endpoints [l1..lk] and [l1..l_{k-1}, lk+1], measure prod a_{li}.
struct Cylinder {
  std::vector<u64> word;
  double left = 0.0;
  double right = 0.0;
  double measure = 0.0;
};

struct ExactCylinder {
  std::vector<u64> word;
  Rational left;
  Rational right;
  Rational measure;
};

inline std::vector<u64> sibling_word(std::vector<u64> word) {
  if (word.empty()) throw DomainError("cylinder: word must be nonempty");
  ++word.back();
  return word;
}

inline Cylinder cylinder(const Partition& p, const std::vector<u64>& word) {
  double a = assemble(p, word);
  double b = assemble(p, sibling_word(word));
  Cylinder c;
  c.word = word;
  c.left = std::min(a, b);
  c.right = std::max(a, b);
  c.measure = truncation_bound(p, word, word.size());
  return c;
}

inline ExactCylinder cylinder_exact(const Partition& p, const std::vector<u64>& word) {
  Rational a = assemble_exact(p, word);
  Rational b = assemble_exact(p, sibling_word(word));
  ExactCylinder c;
  c.word = word;
  c.left = a < b ? a : b;
  c.right = a < b ? b : a;
  c.measure = 1;
  for (u64 d : word) c.measure *= p.atom_exact(d);
  return c;
}

}  // namespace alpha_dyn
