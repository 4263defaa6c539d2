#pragma once

// Umbrella header.

#include "alpha_dyn/conjugacy.hpp"
#include "alpha_dyn/dynamics.hpp"
#include "alpha_dyn/ergodic.hpp"
#include "alpha_dyn/families.hpp"
#include "alpha_dyn/numerics.hpp"
#include "alpha_dyn/partition.hpp"
#include "alpha_dyn/presets.hpp"
#include "alpha_dyn/rational.hpp"
#include "alpha_dyn/renewal.hpp"
#include "alpha_dyn/report.hpp"
#include "alpha_dyn/spec.hpp"
#include "alpha_dyn/spec_io.hpp"
#include "alpha_dyn/special.hpp"
#include "alpha_dyn/thermo.hpp"
