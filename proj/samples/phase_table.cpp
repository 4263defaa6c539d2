// Phase-transition verdicts of the six figure presets.

#include "alpha_dyn/alpha_dyn.hpp"

#include <cstdio>

using namespace alpha_dyn;

int main() {
  for (const FigurePreset& f : figure_presets()) {
    Partition p(f.spec);
    PhaseReport l = luroth_phase_report(p), r = farey_phase_report(p);
    std::printf("%s  %-48s  luroth %-13s farey %-13s t_inf %.4f  t_zero %s\n", f.name.c_str(), f.title.c_str(),
                to_string(l.verdict), to_string(r.verdict), l.t_infinity, format_real(l.t_zero).c_str());
  }
}
