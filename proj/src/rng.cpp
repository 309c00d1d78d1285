// RNG helpers (see rng.hpp).

#include "wdmsnr/rng.hpp"

#include <cmath>

#include "wdmsnr/units.hpp"

namespace wdmsnr {

void Xoshiro256pp::normal_pair(double& a, double& b) {
  // Box-Muller with a guard against log(0).
  double u1 = uniform();
  if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * constants::pi * u2;
  a = radius * std::cos(angle);
  b = radius * std::sin(angle);
}

} // namespace wdmsnr
