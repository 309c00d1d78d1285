// Modulation formats: constellation point sets, normalized power moments, and
// the Gaussian-source surrogate.
//
// Everything downstream consumes only the normalized moments mu4 = E|a|^4 and
// mu6 = E|a|^6 after scaling to E|a|^2 = 1, plus (for the simulator and the
// mutual-information integral) the point list itself.

#pragma once

#include <complex>
#include <string>
#include <vector>

namespace wdmsnr {

struct ConstellationSpec {
  std::string name;                        // e.g. "qpsk", "16qam", "gaussian"
  std::vector<std::complex<double>> points; // normalized: zero mean, E|a|^2 = 1
  bool gaussian = false;                   // continuous circular-Gaussian source
  double mu2 = 1.0;                        // after normalization, by construction
  double mu4 = 1.0;                        // E|a|^4
  double mu6 = 1.0;                        // E|a|^6
};

// Builds a named format. Supported: "qpsk" (alias "4qam"), "16qam", "64qam",
// "256qam", "gaussian". Throws std::invalid_argument for unknown names.
ConstellationSpec make_constellation(const std::string& name);

// Builds a format from an explicit point list (normalizes to zero mean and
// unit average power, then computes moments). Throws on an empty list or a
// list with zero power.
ConstellationSpec make_constellation(const std::string& name,
                                     const std::vector<std::complex<double>>& raw_points);

// Format-dependent brackets of the variance assembly.
// bracket4 = mu4/mu2^2 - 2 (zero for a Gaussian source)
// bracket6 = mu6/mu2^3 - 9*mu4/mu2^2 + 12 (zero for a Gaussian source)
double moment_bracket4(const ConstellationSpec& c);
double moment_bracket6(const ConstellationSpec& c);

} // namespace wdmsnr
