#pragma once

// Plain-data description of a partition family, as read from a spec file.

#include "alpha_dyn/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace alpha_dyn {

enum class FamilyKind { Harmonic, Dyadic, Geometric, PowerAtoms, PowerTail, LogPowerAtoms, Explicit };

inline const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Harmonic: return "harmonic";
    case FamilyKind::Dyadic: return "dyadic";
    case FamilyKind::Geometric: return "geometric";
    case FamilyKind::PowerAtoms: return "power_atoms";
    case FamilyKind::PowerTail: return "power_tail";
    case FamilyKind::LogPowerAtoms: return "log_power_atoms";
    case FamilyKind::Explicit: return "explicit";
  }
  return "?";
}

/// A real parameter. `exact` is set when the parameter was given as a rational
/// string ("1/3", "2") and selects the rational backend where the family allows.
struct Param {
  double value = 0.0;
  std::optional<Rational> exact;

  static Param real(double v) { return Param{v, std::nullopt}; }
  static Param rational(const Rational& q) { return Param{to_double(q), q}; }
  static Param rational(long num, long den = 1) { return rational(make_rational(num, den)); }
};

struct PartitionSpec {
  FamilyKind family = FamilyKind::Harmonic;

  Param c = Param::rational(1);      // geometric
  Param r = Param::rational(1, 2);   // geometric, in (0,1)
  Param s = Param::real(2.0);        // power_atoms exponent; log_power_atoms power (default 2)
  Param theta = Param::real(1.0);    // power_tail
  double k = 0.0;                    // log_power_atoms log exponent
  long shift = 0;                    // log_power_atoms

  std::vector<Param> prefix;                        // explicit
  std::shared_ptr<const PartitionSpec> tail_family;  // explicit

  // ---- builders ------------------------------------------------------------
  static PartitionSpec harmonic() { return {}; }
  static PartitionSpec dyadic() {
    PartitionSpec p;
    p.family = FamilyKind::Dyadic;
    return p;
  }
  static PartitionSpec geometric(Param c, Param r) {
    PartitionSpec p;
    p.family = FamilyKind::Geometric;
    p.c = c;
    p.r = r;
    return p;
  }
  static PartitionSpec power_atoms(Param s) {
    PartitionSpec p;
    p.family = FamilyKind::PowerAtoms;
    p.s = s;
    return p;
  }
  static PartitionSpec power_tail(Param theta) {
    PartitionSpec p;
    p.family = FamilyKind::PowerTail;
    p.theta = theta;
    return p;
  }
  static PartitionSpec log_power_atoms(double k, long shift, Param s = Param::real(2.0)) {
    PartitionSpec p;
    p.family = FamilyKind::LogPowerAtoms;
    p.k = k;
    p.shift = shift;
    p.s = s;
    return p;
  }
  static PartitionSpec explicit_prefix(std::vector<Param> prefix, PartitionSpec tail) {
    PartitionSpec p;
    p.family = FamilyKind::Explicit;
    p.prefix = std::move(prefix);
    p.tail_family = std::make_shared<const PartitionSpec>(std::move(tail));
    return p;
  }
};

}  // namespace alpha_dyn
