#pragma once

// Gamma function for the renewal constants.

#include "alpha_dyn/numerics.hpp"

#include <cmath>
#include <numbers>

namespace alpha_dyn {

// =============================================================================
// Lanczos approximation, g = 7, nine coefficients
// =============================================================================
//
//   Gamma(z+1) = sqrt(2 pi) (z + g + 1/2)^(z+1/2) e^-(z+g+1/2) A_g(z)
//   A_g(z)     = c_0 + sum_{k=1}^{8} c_k / (z + k)
//
// Relative error below 2e-15 on [1/2, 3]; the reflection formula covers
// arguments below 1/2.

namespace detail {

inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_c[9] = {
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7,
};

}  // namespace detail

inline double gamma_function(double x) {
  if (!(x > 0.0 || x != std::floor(x)))
    throw DomainError("gamma: pole at non-positive integer");
  if (x < 0.5) {
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_function(1.0 - x));
  }
  double z = x - 1.0;
  double a = detail::lanczos_c[0];
  for (int k = 1; k < 9; ++k) a += detail::lanczos_c[k] / (z + k);
  double t = z + detail::lanczos_g + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

}  // namespace alpha_dyn
