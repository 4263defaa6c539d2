// Sum-level measures of the harmonic partition: exact values, then the strong
// renewal law w_n * H_n -> 1.

#include "alpha_dyn/alpha_dyn.hpp"

#include <cstdio>

using namespace alpha_dyn;

int main() {
  Partition h(PartitionSpec::harmonic());
  RenewalSequence seq = renewal_sequence(h, 100000);
  for (std::size_t n = 1; n <= 8; ++n) std::printf("w_%zu = %s\n", n, to_string(seq.exact_values[n]).c_str());
  std::printf("%s\n", seq.switch_note.c_str());
  for (std::size_t n : {10, 100, 1000, 10000, 100000})
    std::printf("n = %6zu  w_n H_n = %.6f\n", n, strong_law_ratio(h, seq, n));
}
