#pragma once

// Closed-form and tabulated atom/tail laws for the built-in partition families.
// Everything here is unnormalized plumbing behind `Partition`; callers go
// through partition.hpp.

#include "alpha_dyn/numerics.hpp"
#include "alpha_dyn/rational.hpp"
#include "alpha_dyn/spec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

namespace alpha_dyn {

/// a_n ~ const * exp(-rate n) * n^(-power) * (log n)^(-log_power).
struct Asymptotics {
  double rate = 0.0;
  double power = 0.0;
  double log_power = 0.0;
};

namespace detail {

using u64 = std::uint64_t;

// =============================================================================
// Model interface
// =============================================================================

class FamilyModel {
 public:
  virtual ~FamilyModel() = default;

  /// a_n; may underflow to 0 (the caller turns that into a RangeError).
  virtual double atom(u64 n) const = 0;
  virtual double tail(u64 n) const = 0;
  /// log a(x) + rate * x for real x >= 1, a smooth extension of the atoms.
  virtual double log_atom_rest(double x) const = 0;
  /// Approximate real solution of t(x) = y, used as a search start.
  virtual double inverse_tail(double y) const = 0;
  virtual Asymptotics asymptotics() const = 0;
  virtual double normalization() const { return 1.0; }

  virtual bool exact() const { return false; }
  virtual Rational atom_exact(u64) const { throw DomainError("no exact backend for this family"); }
  virtual Rational tail_exact(u64) const { throw DomainError("no exact backend for this family"); }
};

inline void require(bool ok, const char* field, const char* message) {
  if (!ok) throw SpecError(field, message);
}

// =============================================================================
// Harmonic: a_n = 1/(n(n+1)), t_n = 1/n
// =============================================================================

class HarmonicModel final : public FamilyModel {
 public:
  double atom(u64 n) const override {
    double x = static_cast<double>(n);
    return 1.0 / (x * (x + 1.0));
  }
  double tail(u64 n) const override { return 1.0 / static_cast<double>(n); }
  double log_atom_rest(double x) const override { return -(std::log(x) + std::log1p(x)); }
  double inverse_tail(double y) const override { return 1.0 / y; }
  Asymptotics asymptotics() const override { return {0.0, 2.0, 0.0}; }

  bool exact() const override { return true; }
  Rational atom_exact(u64 n) const override {
    Integer z = Integer(static_cast<unsigned long>(n));
    return Rational(Integer(1), z * (z + 1));
  }
  Rational tail_exact(u64 n) const override {
    return Rational(Integer(1), Integer(static_cast<unsigned long>(n)));
  }
};

// =============================================================================
// Geometric: a_n = C c r^n = (1-r) r^(n-1), t_n = r^(n-1); Dyadic is r = 1/2
// =============================================================================

class GeometricModel final : public FamilyModel {
 public:
  GeometricModel(Param c, Param r) : c_(c), r_(r) {
    require(c.value > 0.0 && std::isfinite(c.value), "c", "must be a positive real");
    require(r.value > 0.0 && r.value < 1.0, "r", "must lie in (0,1)");
    log_r_ = std::log(r.value);
    log_rest_ = std::log1p(-r.value) - log_r_;
    if (r.exact) {
      require(*r.exact > 0 && *r.exact < 1, "r", "must lie in (0,1)");
    }
  }

  double atom(u64 n) const override {
    return (1.0 - r_.value) * std::pow(r_.value, static_cast<double>(n - 1));
  }
  double tail(u64 n) const override { return std::pow(r_.value, static_cast<double>(n - 1)); }
  double log_atom_rest(double) const override { return log_rest_; }
  double inverse_tail(double y) const override { return 1.0 + std::log(y) / log_r_; }
  Asymptotics asymptotics() const override { return {-log_r_, 0.0, 0.0}; }
  /// C with sum C c r^n = 1.
  double normalization() const override { return (1.0 - r_.value) / (c_.value * r_.value); }

  bool exact() const override { return r_.exact.has_value(); }
  Rational atom_exact(u64 n) const override { return (1 - *r_.exact) * pow(*r_.exact, n - 1); }
  Rational tail_exact(u64 n) const override { return pow(*r_.exact, n - 1); }

 private:
  Param c_, r_;
  double log_r_ = 0.0;
  double log_rest_ = 0.0;
};

class DyadicModel final : public FamilyModel {
 public:
  double atom(u64 n) const override {
    return n > 2000 ? 0.0 : std::ldexp(1.0, -static_cast<int>(n));
  }
  double tail(u64 n) const override {
    return n > 2000 ? 0.0 : std::ldexp(1.0, 1 - static_cast<int>(n));
  }
  double log_atom_rest(double) const override { return 0.0; }
  double inverse_tail(double y) const override { return 1.0 - std::log2(y); }
  Asymptotics asymptotics() const override { return {std::log(2.0), 0.0, 0.0}; }

  bool exact() const override { return true; }
  Rational atom_exact(u64 n) const override { return dyadic(n); }
  Rational tail_exact(u64 n) const override { return dyadic(n - 1); }
};

// =============================================================================
// PowerTail: t_n = n^-theta
// =============================================================================

class PowerTailModel final : public FamilyModel {
 public:
  explicit PowerTailModel(Param theta) : theta_(theta) {
    require(theta.value > 0.0 && std::isfinite(theta.value), "theta", "must be a positive real");
    exact_ = theta.exact && is_integer(*theta.exact) && *theta.exact <= 64;
  }

  double atom(u64 n) const override {
    double x = static_cast<double>(n);
    // n^-th (1 - (1 + 1/n)^-th) without cancellation
    return std::pow(x, -theta_.value) * -std::expm1(-theta_.value * std::log1p(1.0 / x));
  }
  double tail(u64 n) const override {
    return std::pow(static_cast<double>(n), -theta_.value);
  }
  double log_atom_rest(double x) const override {
    return -theta_.value * std::log(x) + std::log(-std::expm1(-theta_.value * std::log1p(1.0 / x)));
  }
  double inverse_tail(double y) const override { return std::exp(-std::log(y) / theta_.value); }
  Asymptotics asymptotics() const override { return {0.0, 1.0 + theta_.value, 0.0}; }

  bool exact() const override { return exact_; }
  Rational atom_exact(u64 n) const override { return tail_exact(n) - tail_exact(n + 1); }
  Rational tail_exact(u64 n) const override {
    Integer den;
    mpz_pow_ui(den.get_mpz_t(), Integer(static_cast<unsigned long>(n)).get_mpz_t(),
               theta_.exact->get_num().get_ui());
    return Rational(Integer(1), den);
  }

 private:
  Param theta_;
  bool exact_ = false;
};

// =============================================================================
// Tabulated families: a_n = f(n)/C with C = sum f(n)
// =============================================================================
//
// Tails up to n = K+1 come from a backward compensated sum in long double that
// starts from an Euler-Maclaurin remainder at K+1; beyond that the remainder
// formula is used directly:
//
//   sum_{k>=N} f(k) ~ int_N^inf f + f(N)/2 - f'(N)/12

class TabulatedModel : public FamilyModel {
 public:
  static constexpr u64 table_size = u64{1} << 17;

  double atom(u64 n) const override {
    return static_cast<double>(std::exp(log_f(static_cast<long double>(n))) / norm_);
  }
  double tail(u64 n) const override {
    if (n <= table_size + 1) return static_cast<double>(table_[n]);
    return static_cast<double>(remainder(static_cast<long double>(n)) / norm_);
  }
  double log_atom_rest(double x) const override {
    return static_cast<double>(log_f(x) - std::log(norm_));
  }
  double inverse_tail(double y) const override {
    if (y >= table_[table_size + 1]) {
      // largest n with t_n >= y
      auto first = table_.begin() + 1;
      auto it = std::partition_point(first, table_.end(),
                                     [y](long double t) { return t >= y; });
      return static_cast<double>(it - first);
    }
    return inverse_remainder(static_cast<long double>(y) * norm_);
  }
  double normalization() const override { return static_cast<double>(1.0L / norm_); }

 protected:
  virtual long double log_f(long double x) const = 0;
  /// d/dx log f
  virtual long double dlog_f(long double x) const = 0;
  /// int_N^inf f(x) dx
  virtual long double integral_from(long double n) const = 0;

  long double remainder(long double n) const {
    long double f = std::exp(log_f(n));
    return integral_from(n) + f / 2 - f * dlog_f(n) / 12;
  }

  /// Real x >= K+1 with remainder(x) = target, by bisection in log x.
  virtual double inverse_remainder(long double target) const {
    double lo = std::log(static_cast<double>(table_size + 1));
    double hi = 700.0;
    if (remainder(std::exp(static_cast<long double>(hi))) > target) return std::exp(hi);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      double mid = 0.5 * (lo + hi);
      if (remainder(std::exp(static_cast<long double>(mid))) >= target)
        lo = mid;
      else
        hi = mid;
    }
    return std::exp(lo);
  }

  void build() {
    table_.assign(table_size + 2, 0.0L);
    long double sum = remainder(static_cast<long double>(table_size + 1));
    long double comp = 0.0L;
    table_[table_size + 1] = sum;
    for (u64 n = table_size; n >= 1; --n) {
      long double x = std::exp(log_f(static_cast<long double>(n)));
      long double y = x - comp;
      long double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      table_[n] = sum;
    }
    norm_ = table_[1];
    for (u64 n = 1; n <= table_size + 1; ++n) table_[n] /= norm_;
    table_[1] = 1.0L;
  }

  long double norm_ = 1.0L;
  std::vector<long double> table_;
};

/// a_n proportional to n^-s.
class PowerAtomsModel final : public TabulatedModel {
 public:
  explicit PowerAtomsModel(Param s) : s_(s.value) {
    require(s.value > 1.0 && std::isfinite(s.value), "s", "must be a real > 1");
    build();
  }
  Asymptotics asymptotics() const override { return {0.0, static_cast<double>(s_), 0.0}; }

 protected:
  long double log_f(long double x) const override { return -s_ * std::log(x); }
  long double dlog_f(long double x) const override { return -s_ / x; }
  long double integral_from(long double n) const override {
    return std::exp((1 - s_) * std::log(n)) / (s_ - 1);
  }
  double inverse_remainder(long double target) const override {
    // leading order n^(1-s)/(s-1); the caller refines on integers
    return static_cast<double>(std::exp(std::log(target * (s_ - 1)) / (1 - s_)));
  }

 private:
  long double s_;
};

/// a_n proportional to n^-s (log(n + shift))^-k.
class LogPowerAtomsModel final : public TabulatedModel {
 public:
  LogPowerAtomsModel(double k, long shift, Param s) : k_(k), shift_(shift), s_(s.value) {
    require(std::isfinite(k), "k", "must be a finite real");
    require(s.value >= 1.0 && std::isfinite(s.value), "s", "must be a real >= 1");
    require(s.value > 1.0 || k > 1.0, "k", "must exceed 1 when s = 1 (atoms must be summable)");
    require(k == 0.0 || shift >= 1, "shift", "must be >= 1 so that log(n + shift) > 0");
    build();
  }
  Asymptotics asymptotics() const override { return {0.0, static_cast<double>(s_), k_}; }

 protected:
  long double log_f(long double x) const override {
    return -s_ * std::log(x) - k_ * std::log(std::log(x + shift_));
  }
  long double dlog_f(long double x) const override {
    return -s_ / x - k_ / ((x + shift_) * std::log(x + shift_));
  }
  long double integral_from(long double n) const override {
    double y0 = std::log(static_cast<double>(n));
    double s = static_cast<double>(s_);
    double k = k_;
    double sh = static_cast<double>(shift_);
    // scale out the integrand value at y0 to keep the quadrature O(1)
    double base = (1.0 - s) * y0 - k * std::log(std::log(std::exp(y0) + sh));
    auto g = [=](double y) {
      double x = std::exp(y);
      if (!std::isfinite(x)) return 0.0;
      double e = (1.0 - s) * y - k * std::log(std::log(x + sh)) - base;
      double v = std::exp(e);
      return std::isfinite(v) ? v : 0.0;
    };
    Estimate est = integrate_to_infinity<double>(g, y0, 1e-14);
    return static_cast<long double>(est.value) * std::exp(static_cast<long double>(base));
  }

 private:
  double k_;
  long shift_;
  long double s_;
};

// =============================================================================
// Explicit prefix followed by a scaled copy of another family
// =============================================================================
//
// a_n = p_n for n <= m, a_n = lambda * b_{n-m} beyond, lambda = 1 - sum p.

class ExplicitModel final : public FamilyModel {
 public:
  ExplicitModel(const std::vector<Param>& prefix, std::shared_ptr<const FamilyModel> tail_model)
      : tail_(std::move(tail_model)) {
    require(!prefix.empty(), "prefix", "must be a non-empty list");
    bool all_exact = true;
    NeumaierSum sum;
    for (const auto& p : prefix) {
      require(p.value > 0.0 && std::isfinite(p.value), "prefix", "entries must be positive");
      if (p.exact) require(*p.exact > 0, "prefix", "entries must be positive");
      all_exact = all_exact && p.exact.has_value();
      prefix_.push_back(p.value);
      sum.add(p.value);
    }
    exact_ = all_exact && tail_->exact();
    if (exact_) {
      Rational total = 0;
      for (const auto& p : prefix) {
        total += *p.exact;
        exact_prefix_.push_back(*p.exact);
      }
      require(total < 1, "prefix", "entries must sum to less than 1");
      lambda_exact_ = 1 - total;
      lambda_ = to_double(lambda_exact_);
    } else {
      lambda_ = 1.0 - sum.value();
      require(lambda_ > 0.0, "prefix", "entries must sum to less than 1");
    }
    // suffix tails t_n = lambda + sum_{k=n}^{m} p_k
    m_ = prefix_.size();
    suffix_.assign(m_ + 1, lambda_);
    NeumaierSum acc;
    acc.add(lambda_);
    for (u64 n = m_; n >= 1; --n) {
      acc.add(prefix_[n - 1]);
      suffix_[n - 1] = acc.value();
    }
    suffix_[0] = 1.0;
  }

  double atom(u64 n) const override {
    return n <= m_ ? prefix_[n - 1] : lambda_ * tail_->atom(n - m_);
  }
  double tail(u64 n) const override {
    return n <= m_ ? suffix_[n - 1] : lambda_ * tail_->tail(n - m_);
  }
  double log_atom_rest(double x) const override {
    double rate = tail_->asymptotics().rate;
    if (x <= static_cast<double>(m_) + 0.5) {
      auto n = static_cast<u64>(std::llround(x));
      return std::log(prefix_[n - 1]) + rate * static_cast<double>(n);
    }
    double m = static_cast<double>(m_);
    return std::log(lambda_) + tail_->log_atom_rest(x - m) + rate * m;
  }
  double inverse_tail(double y) const override {
    if (y >= lambda_) {
      u64 n = 1;
      while (n < m_ && suffix_[n] >= y) ++n;
      return static_cast<double>(n);
    }
    return static_cast<double>(m_) + tail_->inverse_tail(y / lambda_);
  }
  Asymptotics asymptotics() const override { return tail_->asymptotics(); }

  bool exact() const override { return exact_; }
  Rational atom_exact(u64 n) const override {
    return n <= m_ ? exact_prefix_[n - 1] : lambda_exact_ * tail_->atom_exact(n - m_);
  }
  Rational tail_exact(u64 n) const override {
    if (n > m_) return lambda_exact_ * tail_->tail_exact(n - m_);
    Rational t = lambda_exact_;
    for (u64 k = n; k <= m_; ++k) t += exact_prefix_[k - 1];
    return t;
  }

  u64 prefix_length() const { return m_; }
  double lambda() const { return lambda_; }
  const FamilyModel& tail_model() const { return *tail_; }

 private:
  std::shared_ptr<const FamilyModel> tail_;
  std::vector<double> prefix_;
  std::vector<double> suffix_;
  std::vector<Rational> exact_prefix_;
  Rational lambda_exact_;
  double lambda_ = 0.0;
  u64 m_ = 0;
  bool exact_ = false;
};

// =============================================================================
// Factory
// =============================================================================

inline std::shared_ptr<const FamilyModel> make_model(const PartitionSpec& spec) {
  switch (spec.family) {
    case FamilyKind::Harmonic: return std::make_shared<HarmonicModel>();
    case FamilyKind::Dyadic: return std::make_shared<DyadicModel>();
    case FamilyKind::Geometric: return std::make_shared<GeometricModel>(spec.c, spec.r);
    case FamilyKind::PowerAtoms: return std::make_shared<PowerAtomsModel>(spec.s);
    case FamilyKind::PowerTail: return std::make_shared<PowerTailModel>(spec.theta);
    case FamilyKind::LogPowerAtoms:
      return std::make_shared<LogPowerAtomsModel>(spec.k, spec.shift, spec.s);
    case FamilyKind::Explicit:
      require(spec.tail_family != nullptr, "tail_family", "is required for explicit partitions");
      return std::make_shared<ExplicitModel>(spec.prefix, make_model(*spec.tail_family));
  }
  throw SpecError("family", "unknown family");
}

inline u64 prefix_length(const FamilyModel& model) {
  if (auto* e = dynamic_cast<const ExplicitModel*>(&model)) return e->prefix_length();
  return 0;
}

}  // namespace detail
}  // namespace alpha_dyn
