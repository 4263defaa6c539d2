#pragma once

// Named partitions: the two classical ones and six figure presets with their
// plotting grids and expected phase-transition verdicts.

#include "alpha_dyn/spec.hpp"
#include "alpha_dyn/thermo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace alpha_dyn {

struct GridSpec {
  double from = 0.0;
  double to = 1.0;
  std::size_t samples = 50;
  std::vector<double> points() const { return linear_grid(from, to, samples); }
};

struct FigurePreset {
  std::string name;
  std::string title;
  PartitionSpec spec;
  GridSpec pressure_grid;     // u
  GridSpec free_energy_grid;  // u
  GridSpec tau_grid;          // s
  GridSpec sigma_grid;        // s
  Verdict luroth_verdict = Verdict::NoTransition;
  Verdict farey_verdict = Verdict::NoTransition;
  std::optional<bool> pressure_finite_at_t_infinity;  // set when the caption states it
};

inline std::vector<FigurePreset> figure_presets() {
  std::vector<FigurePreset> out;
  auto add = [&](FigurePreset p) { out.push_back(std::move(p)); };

  add({"fig1", "harmonic: a_n = 1/(n(n+1))", PartitionSpec::harmonic(),
       {0.55, 3.0, 50}, {-3.0, 3.0, 50}, {0.1, 6.0, 50}, {0.01, 1.0, 50},
       Verdict::NoTransition, Verdict::NoTransition, false});
  add({"fig2", "power atoms: a_n = n^-3 / zeta(3)", PartitionSpec::power_atoms(Param::rational(3)),
       {0.4, 3.0, 50}, {-3.0, 3.0, 50}, {0.1, 6.0, 50}, {0.01, 1.25, 50},
       Verdict::NoTransition, Verdict::Transition, false});
  add({"fig3", "log power atoms: a_n = n^-2 log(n+5)^-12 / C", PartitionSpec::log_power_atoms(12, 5),
       {0.5, 3.0, 50}, {-3.0, 3.0, 50}, {0.05, 6.0, 50}, {0.01, 1.45, 50},
       Verdict::Transition, Verdict::Transition, true});
  add({"fig4", "log power atoms: a_n = n^-2 log(n+5)^-4 / C", PartitionSpec::log_power_atoms(4, 5),
       {0.5, 3.0, 50}, {-3.0, 3.0, 50}, {0.1, 6.0, 50}, {0.01, 1.1, 50},
       Verdict::NoTransition, Verdict::Transition, true});
  add({"fig5", "power atoms: a_n = n^-5/4 / zeta(5/4)", PartitionSpec::power_atoms(Param::rational(5, 4)),
       {0.85, 3.0, 50}, {-3.0, 3.0, 50}, {0.5, 10.0, 50}, {0.01, 1.6, 50},
       Verdict::NoTransition, Verdict::NoTransition, false});
  add({"fig6", "geometric: a_n = 2 * 3^-n",
       PartitionSpec::geometric(Param::rational(2), Param::rational(1, 3)),
       {0.05, 3.0, 50}, {-3.0, 3.0, 50}, {0.1, 6.0, 50}, {0.3, 1.2, 50},
       Verdict::NoTransition, Verdict::NoTransition, false});
  return out;
}

inline std::optional<FigurePreset> find_preset(const std::string& name) {
  for (FigurePreset& p : figure_presets())
    if (p.name == name) return p;
  return std::nullopt;
}

/// Built-in spec names: the classical partitions and the figure presets.
inline std::optional<PartitionSpec> builtin_spec(const std::string& name) {
  if (name == "harmonic") return PartitionSpec::harmonic();
  if (name == "dyadic") return PartitionSpec::dyadic();
  if (auto p = find_preset(name)) return p->spec;
  return std::nullopt;
}

}  // namespace alpha_dyn
