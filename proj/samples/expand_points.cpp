// Lueroth digits, Farey code and tent-map conjugacy of a few rationals.

#include "alpha_dyn/alpha_dyn.hpp"

#include <cstdio>

using namespace alpha_dyn;

int main() {
  Partition h(PartitionSpec::harmonic());
  for (const char* s : {"3/4", "1/3", "5/7", "22/31"}) {
    Rational x = *parse_rational(s);
    DigitWord w = expand(h, x, 40);
    std::printf("%-6s [%s]  code %s  theta %s\n", s, to_string(w).c_str(),
                to_string(farey_code(w, 24)).c_str(), to_string(theta_exact(w)).c_str());
  }
}
