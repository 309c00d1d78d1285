// Physical constants and engineering-unit <-> SI conversions.
//
// All public model code works in SI (m, s, W, rad/s). Configs use the usual
// engineering units (km, dB/km, ps/nm/km, GBd, GHz, dBm); every conversion
// between the two worlds lives here so it can be round-trip tested in one
// place.

#pragma once

#include <cmath>

namespace wdmsnr {

namespace constants {
inline constexpr double c_light = 299792458.0;        // m/s (exact)
inline constexpr double h_planck = 6.62607015e-34;    // J*s (exact, SI 2019)
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double hbar = h_planck / (2.0 * pi); // J*s
} // namespace constants

namespace units {

// --- power ---
inline double dbm_to_watt(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }

// --- ratios ---
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// --- fiber attenuation: dB/km -> 1/m (power attenuation coefficient) ---
inline double alpha_db_km_to_per_m(double db_per_km) {
  return db_per_km * std::log(10.0) / 10.0 / 1e3;
}
inline double alpha_per_m_to_db_km(double per_m) {
  return per_m * 10.0 / std::log(10.0) * 1e3;
}

// --- chromatic dispersion: D [ps/nm/km] at wavelength lambda0 [m] -> beta2 [s^2/m] ---
// D = -(2*pi*c/lambda^2) * beta2, with D in SI s/m^2 (1 ps/nm/km = 1e-6 s/m^2).
inline double dispersion_to_beta2(double d_ps_nm_km, double lambda0_m) {
  const double d_si = d_ps_nm_km * 1e-6; // s/m^2
  return -d_si * lambda0_m * lambda0_m / (2.0 * constants::pi * constants::c_light);
}
inline double beta2_to_dispersion(double beta2_s2_m, double lambda0_m) {
  return -beta2_s2_m * 2.0 * constants::pi * constants::c_light /
         (lambda0_m * lambda0_m) * 1e6;
}

// --- nonlinearity: gamma [1/(W*km)] -> [1/(W*m)] ---
inline double gamma_per_w_km_to_per_w_m(double g) { return g / 1e3; }

// Kerr coefficient from nonlinear index n2 [m^2/W] and effective area [m^2].
inline double gamma_from_n2(double n2_m2_w, double lambda0_m, double aeff_m2) {
  return 2.0 * constants::pi * n2_m2_w / (lambda0_m * aeff_m2);
}

// --- amplifier noise: noise figure [dB] -> spontaneous-emission factor n_sp ---
// NF = 2 n_sp (G-1)/G ~ 2 n_sp for large gain; we use the large-gain form.
inline double noise_figure_db_to_nsp(double nf_db) {
  return db_to_linear(nf_db) / 2.0;
}

// --- carrier ---
inline double wavelength_to_omega0(double lambda0_m) {
  return 2.0 * constants::pi * constants::c_light / lambda0_m;
}

} // namespace units
} // namespace wdmsnr
