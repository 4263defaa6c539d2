#pragma once

// Shared numeric plumbing: error types, symbolic infinity, compensated
// summation and semi-infinite quadrature.

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace alpha_dyn {

// =============================================================================
// Errors
// =============================================================================

/// Argument outside the mathematical domain of an operation (x <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A closed form over- or underflowed; never reported as a silent zero.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Malformed or inconsistent partition description.
class SpecError : public std::invalid_argument {
 public:
  SpecError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// =============================================================================
// Values
// =============================================================================

/// A real number or a symbolic +infinity. Symbolic infinity marks a divergent
/// series and is kept distinct from a floating-point overflow.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : value_(v) {}  // NOLINT(implicit)

  static constexpr ExtendedReal infinity(bool negative = false) {
    ExtendedReal r;
    r.infinite_ = true;
    r.value_ = negative ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
    return r;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_negative() const { return value_ < 0.0; }

  double value() const {
    if (infinite_) throw DomainError("value requested from a symbolic infinity");
    return value_;
  }
  /// The finite value, or IEEE +-inf for symbolic infinity.
  constexpr double as_double() const { return value_; }

  constexpr ExtendedReal operator-() const {
    ExtendedReal r = *this;
    r.value_ = -value_;
    return r;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

/// A computed value with an absolute error bound.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

// =============================================================================
// Summation
// =============================================================================

/// Neumaier's variant of Kahan summation.
class NeumaierSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    abs_ += std::fabs(x);
  }
  double value() const { return sum_ + comp_; }
  /// Sum of |terms|; bounds the accumulated rounding error together with eps.
  double magnitude() const { return abs_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_ = 0.0;
};

// =============================================================================
// Quadrature
// =============================================================================

namespace detail {

template <class Real>
boost::math::quadrature::exp_sinh<Real>& exp_sinh_rule() {
  thread_local boost::math::quadrature::exp_sinh<Real> rule;
  return rule;
}

}  // namespace detail

/// Integral of f over [a, inf) by double-exponential quadrature.
template <class Real, class F>
Estimate integrate_to_infinity(F&& f, Real a, Real tolerance = Real(1e-15)) {
  Real err = 0;
  Real l1 = 0;
  Real value = detail::exp_sinh_rule<Real>().integrate(
      [&](Real t) { return f(a + t); }, tolerance, &err, &l1);
  return {static_cast<double>(value), static_cast<double>(err)};
}

}  // namespace alpha_dyn
