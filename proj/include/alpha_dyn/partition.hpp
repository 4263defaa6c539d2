#pragma once

// Partitions of (0,1] into right-closed atoms A_n = (t_{n+1}, t_n].

#include "alpha_dyn/families.hpp"
#include "alpha_dyn/numerics.hpp"
#include "alpha_dyn/rational.hpp"
#include "alpha_dyn/spec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace alpha_dyn {

using u64 = std::uint64_t;

// =============================================================================
// Classification
// =============================================================================

enum class TypeClass { Finite, Infinite };
enum class TailKind { Expansive, Expanding, Other };

/// t_n ~ const * n^-theta * psi(n) with psi(n) ~ (log n)^-psi_log_power for
/// expansive partitions; t_n / t_{n+1} -> rho for expanding ones.
struct Classification {
  TypeClass type_class = TypeClass::Infinite;
  TailKind tail_kind = TailKind::Other;
  double theta = 0.0;
  double psi_log_power = 0.0;
  double rho = 1.0;
  bool eventually_decreasing = true;
};

inline const char* to_string(TypeClass t) { return t == TypeClass::Finite ? "finite" : "infinite"; }
inline const char* to_string(TailKind k) {
  switch (k) {
    case TailKind::Expansive: return "expansive";
    case TailKind::Expanding: return "expanding";
    case TailKind::Other: return "other";
  }
  return "?";
}

// =============================================================================
// Series results
// =============================================================================

/// Powers in the general term n^j (log n)^m a_n^u e^{-alpha n} (log a_n)^i.
struct Weight {
  int n_power = 0;
  int log_n_power = 0;
  int log_atom_power = 0;
};

/// A positive or negative series value held as sign * exp(log_abs). A
/// divergent series has finite == false and keeps the sign of its terms.
struct SeriesValue {
  bool finite = true;
  int sign = 1;
  double log_abs = 0.0;
  double rel_error = 0.0;

  double value() const {
    if (!finite) throw DomainError("series diverges");
    double v = std::exp(log_abs);
    if (!std::isfinite(v)) throw RangeError("series value overflows a double");
    return sign * v;
  }
  double abs_error() const { return std::fabs(value()) * rel_error; }
  ExtendedReal extended() const {
    if (!finite) return ExtendedReal::infinity();
    return ExtendedReal(value());
  }
};

struct PartialTailSum {
  double partial = 0.0;        // sum_{k<=n} t_k, compensated
  double partial_error = 0.0;
  ExtendedReal remainder;      // sum_{k>n} t_k, symbolic infinity for infinite type
  double remainder_error = 0.0;
};

// =============================================================================
// Partition
// =============================================================================

class Partition {
 public:
  explicit Partition(PartitionSpec spec) : impl_(std::make_shared<Impl>(std::move(spec))) {}

  const PartitionSpec& spec() const { return impl_->spec; }
  std::string description() const { return impl_->describe(impl_->spec); }
  bool exact() const { return impl_->model->exact(); }
  double normalization() const { return impl_->model->normalization(); }
  Asymptotics asymptotics() const { return impl_->asym; }

  // ---- atoms and tails -----------------------------------------------------

  double atom(u64 n) const {
    require_index(n);
    return checked(impl_->model->atom(n), "atom", n);
  }
  double tail(u64 n) const {
    require_index(n);
    return checked(impl_->model->tail(n), "tail", n);
  }
  /// a_n or 0 when a_n underflows; for sums whose neglected mass is tracked.
  double atom_or_zero(u64 n) const { return n == 0 ? 0.0 : impl_->model->atom(n); }
  double tail_or_zero(u64 n) const { return n == 0 ? 1.0 : impl_->model->tail(n); }

  /// log a_n without underflow.
  double log_atom(u64 n) const {
    require_index(n);
    if (n <= impl_->cache_size) return impl_->log_atom[n];
    return log_atom_real(static_cast<double>(n));
  }
  /// Smooth extension of log a_x for real x beyond the explicit prefix.
  double log_atom_real(double x) const {
    return impl_->model->log_atom_rest(x) - impl_->asym.rate * x;
  }

  Rational atom_exact(u64 n) const {
    require_index(n);
    require_exact();
    return impl_->model->atom_exact(n);
  }
  Rational tail_exact(u64 n) const {
    require_index(n);
    require_exact();
    return impl_->model->tail_exact(n);
  }

  // ---- locate ----------------------------------------------------------------

  /// The n with t_{n+1} < x <= t_n.
  u64 locate(double x) const {
    if (!(x > 0.0 && x <= 1.0)) throw DomainError("locate: x must lie in (0,1]");
    const auto& model = *impl_->model;
    return refine(guess_index(model.inverse_tail(x)), [&](u64 k) { return model.tail(k) >= x; });
  }

  u64 locate(const Rational& x) const {
    if (!(x > 0 && x <= 1)) throw DomainError("locate: x must lie in (0,1]");
    if (!exact()) return locate(to_double(x));
    const auto& model = *impl_->model;
    u64 guess = guess_index(model.inverse_tail(to_double(x)));
    return refine(guess, [&](u64 k) { return model.tail_exact(k) >= x; });
  }

  /// locate() as a real number, falling back to the continuous inverse of the
  /// tail law when the index is beyond 2^53.
  double locate_real(double x) const {
    if (!(x > 0.0 && x <= 1.0)) throw DomainError("locate: x must lie in (0,1]");
    double g = impl_->model->inverse_tail(x);
    if (g < 9.0e15) return static_cast<double>(locate(x));
    return std::floor(g);
  }

  // ---- classification --------------------------------------------------------

  Classification classify() const {
    const Asymptotics& a = impl_->asym;
    Classification c;
    c.eventually_decreasing = true;
    if (a.rate > 0.0) {
      c.tail_kind = TailKind::Expanding;
      c.rho = std::exp(a.rate);
      c.type_class = TypeClass::Finite;
      if (spec_root_kind() == FamilyKind::Geometric) c.rho = 1.0 / root_spec().r.value;
      if (spec_root_kind() == FamilyKind::Dyadic) c.rho = 2.0;
      return c;
    }
    c.tail_kind = TailKind::Expansive;
    c.rho = 1.0;
    c.theta = a.power - 1.0;
    if (std::fabs(c.theta) < tol) c.theta = 0.0;
    // integrating n^-power (log n)^-k: theta = 0 leaves one log power behind
    c.psi_log_power = c.theta == 0.0 ? a.log_power - 1.0 : a.log_power;
    bool finite = c.theta > 1.0 + tol || (std::fabs(c.theta - 1.0) <= tol && c.psi_log_power > 1.0 + tol);
    c.type_class = finite ? TypeClass::Finite : TypeClass::Infinite;
    return c;
  }

  // ---- tail sums -------------------------------------------------------------

  /// sum_{k>=1} t_k = sum_k k a_k; symbolic infinity for infinite type.
  SeriesValue tail_sum() const { return series(1.0, impl_->asym.rate, Weight{1, 0, 0}); }

  PartialTailSum partial_tail_sum(u64 n) const {
    require_index(n);
    NeumaierSum s;
    for (u64 k = 1; k <= n; ++k) s.add(tail_or_zero(k));
    PartialTailSum out;
    out.partial = s.value();
    out.partial_error = 2.0 * eps * s.magnitude();
    if (classify().type_class == TypeClass::Infinite) {
      out.remainder = ExtendedReal::infinity();
      return out;
    }
    SeriesValue total = tail_sum();
    double rem = total.value() - out.partial;
    out.remainder_error = total.abs_error() + out.partial_error + eps * total.value();
    out.remainder = ExtendedReal(std::max(rem, 0.0));
    return out;
  }

  Rational partial_tail_sum_exact(u64 n) const {
    require_exact();
    Rational s = 0;
    for (u64 k = 1; k <= n; ++k) s += impl_->model->tail_exact(k);
    return s;
  }

  // ---- series engine ---------------------------------------------------------

  /// sum_n n^j (log n)^m a_n^u e^{-(alpha - u*rate) n} (log a_n)^i.
  ///
  /// `alpha` is the total linear decay rate of the term, i.e. the free-energy
  /// variable v plus u times the geometric rate of the atoms. Keeping it
  /// separate avoids cancellation between u*log a_n and v*n.
  SeriesValue series(double u, double alpha, Weight w) const {
    std::array<Weight, 1> ws{w};
    return series(u, alpha, ws)[0];
  }

  template <std::size_t K>
  std::array<SeriesValue, K> series(double u, double alpha, const std::array<Weight, K>& ws) const {
    std::array<SeriesValue, K> out;
    for (std::size_t q = 0; q < K; ++q) out[q] = series_one(u, alpha, ws[q]);
    return out;
  }

  /// Whether the series of `series()` converges, decided from the asymptotic
  /// law of the atoms rather than from partial sums.
  bool converges(double u, double alpha, Weight w) const {
    if (alpha > 0.0) return true;
    if (alpha < 0.0) return false;
    const Asymptotics& a = impl_->asym;
    double power = u * a.power - w.n_power;
    double log_power = u * a.log_power - w.log_n_power;
    if (a.rate > 0.0)
      power -= w.log_atom_power;  // |log a_n| ~ rate * n
    else if (a.power > 0.0)
      log_power -= w.log_atom_power;  // |log a_n| ~ power * log n
    if (power > 1.0 + tol) return true;
    if (std::fabs(power - 1.0) <= tol) return log_power > 1.0 + tol;
    return false;
  }

  static constexpr double tol = 1e-12;
  static constexpr double eps = std::numeric_limits<double>::epsilon();

 private:
  struct Impl {
    explicit Impl(PartitionSpec s) : spec(std::move(s)), model(detail::make_model(spec)) {
      asym = model->asymptotics();
      prefix_len = detail::prefix_length(*model);
      cache_size = std::max<u64>(4096, 2 * prefix_len + 64);
      log_n.assign(cache_size + 1, 0.0);
      log_log_n.assign(cache_size + 1, 0.0);
      log_rest.assign(cache_size + 1, 0.0);
      log_atom.assign(cache_size + 1, 0.0);
      log_neg_log_atom.assign(cache_size + 1, 0.0);
      for (u64 n = 1; n <= cache_size; ++n) {
        double x = static_cast<double>(n);
        log_n[n] = std::log(x);
        log_log_n[n] = n == 1 ? -std::numeric_limits<double>::infinity() : std::log(log_n[n]);
        log_rest[n] = model->log_atom_rest(x);
        log_atom[n] = log_rest[n] - asym.rate * x;
        log_neg_log_atom[n] = std::log(-log_atom[n]);
      }
      if (asym.rate == 0.0) log_rest_at_ymax = model->log_atom_rest(std::exp(700.0));
    }

    static std::string describe(const PartitionSpec& s) {
      std::ostringstream os;
      os.precision(15);
      auto param = [&](const Param& p) {
        if (p.exact) os << alpha_dyn::to_string(*p.exact);
        else os << p.value;
      };
      os << family_name(s.family);
      switch (s.family) {
        case FamilyKind::Geometric:
          os << "{c=";
          param(s.c);
          os << ", r=";
          param(s.r);
          os << "}";
          break;
        case FamilyKind::PowerAtoms:
          os << "{s=";
          param(s.s);
          os << "}";
          break;
        case FamilyKind::PowerTail:
          os << "{theta=";
          param(s.theta);
          os << "}";
          break;
        case FamilyKind::LogPowerAtoms:
          os << "{k=" << s.k << ", shift=" << s.shift;
          if (s.s.value != 2.0) {
            os << ", s=";
            param(s.s);
          }
          os << "}";
          break;
        case FamilyKind::Explicit:
          os << "{prefix=[";
          for (std::size_t i = 0; i < s.prefix.size(); ++i) {
            if (i) os << ",";
            param(s.prefix[i]);
          }
          os << "], tail=" << (s.tail_family ? describe(*s.tail_family) : std::string("?")) << "}";
          break;
        default: break;
      }
      return os.str();
    }

    PartitionSpec spec;
    std::shared_ptr<const detail::FamilyModel> model;
    Asymptotics asym;
    u64 cache_size = 0;
    u64 prefix_len = 0;
    std::vector<double> log_n, log_log_n, log_rest, log_atom, log_neg_log_atom;
    double log_rest_at_ymax = 0.0;
  };

  static void require_index(u64 n) {
    if (n == 0) throw DomainError("atom index must be >= 1");
  }
  void require_exact() const {
    if (!exact()) throw DomainError("partition has no exact rational backend");
  }
  static double checked(double v, const char* what, u64 n) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw RangeError(std::string(what) + "(" + std::to_string(n) + ") is outside double range");
    return v;
  }

  FamilyKind spec_root_kind() const { return impl_->spec.family; }
  const PartitionSpec& root_spec() const { return impl_->spec; }

  static u64 guess_index(double g) {
    if (std::isnan(g)) return 1;
    if (!(g < 1.8e19)) throw RangeError("locate: atom index exceeds 64-bit range");
    return std::max<u64>(1, static_cast<u64>(std::floor(g)));
  }

  /// Largest n with pred(n), for a predicate true on [1, n*] and false after.
  template <class Pred>
  static u64 refine(u64 n, Pred pred) {
    constexpr u64 top = std::numeric_limits<u64>::max();
    u64 lo, hi;
    if (pred(n)) {
      lo = n;
      u64 step = 1;
      for (;;) {
        hi = lo > top - step ? top : lo + step;
        if (!pred(hi)) break;
        if (hi == top) throw RangeError("locate: atom index exceeds 64-bit range");
        lo = hi;
        step = step > top / 2 ? top : step * 2;
      }
    } else {
      hi = n;
      u64 step = 1;
      for (;;) {
        u64 cand = hi > step ? hi - step : 1;
        if (pred(cand)) {
          lo = cand;
          break;
        }
        hi = cand;
        step *= 2;
      }
    }
    while (hi - lo > 1) {
      u64 mid = lo + (hi - lo) / 2;
      if (pred(mid))
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  }

  // ---- series internals -------------------------------------------------------

  double continuous_exponent(double x, double u, double alpha, Weight w) const {
    double rest = impl_->model->log_atom_rest(x);
    double la = rest - impl_->asym.rate * x;
    double lx = std::log(x);
    double e = u * rest - alpha * x;
    if (w.n_power) e += w.n_power * lx;
    if (w.log_n_power) e += w.log_n_power * std::log(lx);
    if (w.log_atom_power) e += w.log_atom_power * std::log(-la);
    return e;
  }

  /// Exponent of the summand in y = log x including the Jacobian e^y. Past
  /// x = e^700 the atom law is continued by its asymptotic form, which is
  /// exact to double precision there.
  double exponent_at_log(double y, double u, double alpha, Weight w) const {
    constexpr double y_max = 700.0;
    if (y <= y_max) return continuous_exponent(std::exp(y), u, alpha, w) + y;
    const Asymptotics& a = impl_->asym;
    if (a.rate > 0.0) return -std::numeric_limits<double>::infinity();
    double log_ratio = std::log(y / y_max);
    double rest = impl_->log_rest_at_ymax - a.power * (y - y_max) - a.log_power * log_ratio;
    // the y-linear parts are collected first; they cancel exactly at u = 1/power
    double slope = 1.0 + w.n_power - u * a.power;
    double e = u * (impl_->log_rest_at_ymax + a.power * y_max - a.log_power * log_ratio) + slope * y;
    if (alpha > 0.0) e -= std::exp(std::log(alpha) + y);
    if (w.log_n_power) e += w.log_n_power * std::log(y);
    if (w.log_atom_power) e += w.log_atom_power * std::log(-rest);
    return e;
  }

  SeriesValue series_one(double u, double alpha, Weight w) const {
    SeriesValue out;
    out.sign = (w.log_atom_power % 2) ? -1 : 1;
    if (!converges(u, alpha, w)) {
      out.finite = false;
      return out;
    }
    const Impl& im = *impl_;
    const u64 N = im.cache_size;
    thread_local std::vector<double> expo;
    expo.resize(N + 1);

    // pass 1: exponents and their maximum; stop early on geometric decay
    double big = -std::numeric_limits<double>::infinity();
    double geometric_rem = 0.0;  // relative bound of the cut-off remainder
    u64 last = N;
    bool cut = false;
    for (u64 n = 1; n <= N; ++n) {
      double e = u * im.log_rest[n] - alpha * static_cast<double>(n);
      if (w.n_power) e += w.n_power * im.log_n[n];
      if (w.log_n_power) e += w.log_n_power * im.log_log_n[n];
      if (w.log_atom_power) e += w.log_atom_power * im.log_neg_log_atom[n];
      expo[n] = e;
      if (e > big) big = e;
      if (alpha > 0.0 && n > 16 + im.prefix_len) {
        double slope = e - expo[n - 1];
        if (slope < 0.0) {
          double bound = std::exp(e - big) / -std::expm1(slope);
          if (bound < 1e-18) {
            geometric_rem = bound;
            last = n;
            cut = true;
            break;
          }
        }
      }
    }

    // scale also by the continuous tail, whose terms may exceed the prefix
    double x0 = static_cast<double>(N) + 0.5;
    if (!cut) {
      double y0 = std::log(x0);
      for (double y = y0; y < 1e12; y *= 1.15) {
        double e = exponent_at_log(y, u, alpha, w) - y0;
        if (std::isfinite(e) && e > big) big = e;
      }
    }

    NeumaierSum sum;
    for (u64 n = 1; n <= last; ++n) {
      if (expo[n] == -std::numeric_limits<double>::infinity()) continue;
      sum.add(std::exp(expo[n] - big));
    }
    double err = geometric_rem;
    double max_abs_exponent = std::fabs(big);

    if (!cut) {
      // sum_{n>N} f(n) = int_{N+1/2}^inf f + f'(x0)/24 + O(f'''(x0))
      double y0 = std::log(x0);
      auto g = [&](double y) {
        double e = exponent_at_log(y, u, alpha, w) - big;
        if (std::isnan(e)) return 0.0;
        double v = std::exp(e);
        return std::isfinite(v) ? v : 0.0;
      };
      Estimate tail = integrate_to_infinity<double>(g, y0, 1e-13);
      double f0 = std::exp(continuous_exponent(x0, u, alpha, w) - big);
      double h = 1e-4 * x0;
      double d1 = (continuous_exponent(x0 + h, u, alpha, w) - continuous_exponent(x0 - h, u, alpha, w)) /
                  (2.0 * h);
      double corr = f0 * d1 / 24.0;
      double next = 7.0 / 5760.0 * f0 * std::pow(std::fabs(d1) + 3.0 / x0, 3);
      sum.add(tail.value);
      sum.add(corr);
      err += tail.error + next + 1e-6 * std::fabs(corr);
    }

    double total = sum.value();
    if (!(total > 0.0)) throw RangeError("series evaluation lost all significance");
    out.log_abs = std::log(total) + big;
    out.rel_error = err / total + 4.0 * eps * (1.0 + max_abs_exponent) +
                    2.0 * eps * sum.magnitude() / total;
    return out;
  }

  std::shared_ptr<const Impl> impl_;
};

}  // namespace alpha_dyn
