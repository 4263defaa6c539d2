#pragma once

#include "alpha_dyn/alpha_dyn.hpp"

#include <string>
#include <utility>
#include <vector>

namespace alpha_dyn::testing {

struct Named {
  std::string name;
  PartitionSpec spec;
};

inline PartitionSpec geometric_third() { return PartitionSpec::geometric(Param::rational(2), Param::rational(1, 3)); }

inline PartitionSpec explicit_halves() {
  return PartitionSpec::explicit_prefix({Param::rational(1, 2), Param::rational(1, 4)}, PartitionSpec::harmonic());
}

inline std::vector<Named> all_families() {
  return {
      {"harmonic", PartitionSpec::harmonic()},
      {"dyadic", PartitionSpec::dyadic()},
      {"geometric", geometric_third()},
      {"power_atoms_3", PartitionSpec::power_atoms(Param::real(3.0))},
      {"power_atoms_5_4", PartitionSpec::power_atoms(Param::real(1.25))},
      {"power_tail_1_2", PartitionSpec::power_tail(Param::rational(1, 2))},
      {"power_tail_3_4", PartitionSpec::power_tail(Param::real(0.75))},
      {"power_tail_2", PartitionSpec::power_tail(Param::rational(2))},
      {"log_power_12", PartitionSpec::log_power_atoms(12, 5)},
      {"log_power_4", PartitionSpec::log_power_atoms(4, 5)},
      {"explicit", explicit_halves()},
  };
}

inline std::vector<Named> exact_families() {
  return {
      {"harmonic", PartitionSpec::harmonic()},
      {"dyadic", PartitionSpec::dyadic()},
      {"geometric", geometric_third()},
      {"power_tail_2", PartitionSpec::power_tail(Param::rational(2))},
      {"explicit", explicit_halves()},
  };
}

/// Random rational in (0,1) with denominator below 2^30.
inline Rational random_rational(std::uint64_t seed, std::uint64_t k) {
  SplitMix64 g(seed, 7);
  std::uint64_t den = (g.bits(2 * k) >> 34) + 2;
  std::uint64_t num = g.bits(2 * k + 1) % (den - 1) + 1;
  Rational q = from_u64(num) / from_u64(den);
  q.canonicalize();
  return q;
}

}  // namespace alpha_dyn::testing
