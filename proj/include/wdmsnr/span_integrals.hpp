// Closed-form frequency-domain span integrals of the first-order perturbation
// kernel, their stable numerical helpers, and the noise-weighted double-z
// assembly R used by the signal-noise coefficients.
//
// Conventions: a frequency triple (w1, w2, w3) describes one third-order
// mixing product landing at w1 - w2 + w3. The mixing phase rate on span m is
// phi = beta2_m * Phi with Phi = (w2 - w1)(w2 - w3); the field kernel on the
// span is H(z) = exp((-alpha_m + i*phi)(z - z_{m-1})) times the phase and
// depletion accumulated on earlier spans. All returned integrals include the
// Nyquist gating factor (so they vanish outside the admissible region) but
// not the Kerr coefficient; per-span gamma heterogeneity is applied by the
// callers as gamma_m / gamma_ref weights.

#pragma once

#include <complex>
#include <vector>

#include "wdmsnr/link.hpp"

namespace wdmsnr {

using cdouble = std::complex<double>;

struct FreqTriple {
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;
};

// Mixing phase factor Phi = (w2 - w1)(w2 - w3).
inline double mixing_phase(const FreqTriple& w) {
  return (w.w2 - w.w1) * (w.w2 - w.w3);
}

// Nyquist gating: T^2 iff all four pulse-spectrum factors are strictly in
// band (|w1 - Omega_s|, |w2 - Omega_{s+s'}|, |w3 - Omega_{s'}|, |w1 - w2 + w3|
// all < pi/T), else 0. Band edges count as out of band.
double gating_pi(const FreqTriple& w, int s, int sp, const ChannelPlan& plan);

// (e^{sL} - 1)/s with a series branch for small |sL|; exact limit L at s = 0.
cdouble em1(cdouble s, double length);

// Ordered double exponential integral
//   F(s, sp, L) = int_0^L e^{s u} int_0^u e^{sp v} dv du
//               = (em1(s + sp, L) - em1(s, L)) / sp,
// with a derivative-series branch for small |sp|*L.
cdouble ordered_exp_pair(cdouble s, cdouble sp, double length);

// Single-span z-integral of the mixing kernel over span j (0-based):
//   r = Pi * e^{-delta_{j}} * e^{i Phi B_j} * em1(-alpha_j + i phi_j, L_j)
// where B_j is the dispersion accumulated before span j and delta_j the
// depletion accumulated before span j. Units: m (times the T^2 gate).
cdouble span_r(const FreqTriple& w, int s, int sp, int span_j,
               const LinkModel& link, const ChannelPlan& plan);

// Ordered double-z integral over one span:
//   I = int_span dz H_w(z) int_{z_{j}}^{z} dz' conj(H_w'(z'))
// in closed form. Units: m^2 (times the two gates).
cdouble span_pair_I(const FreqTriple& w, const FreqTriple& wp, int s, int sp,
                    int span_j, const LinkModel& link, const ChannelPlan& plan);

// Whole-link kernel sum rho = sum_m (gamma_m/gamma_ref) r_m. Units: m.
cdouble rho_total(const FreqTriple& w, int s, int sp, const LinkModel& link,
                  const ChannelPlan& plan);

// Noise-weighted ordered double-z integral over the whole link:
//   R = sum_m wgt_m r_{w,m} h_m + sum_m psi_m wgt_m^2 I_{w,w',m},
//   h_m = sum_{j<m} psi_j wgt_j conj(r_{w',j}),
// i.e. the z' < z half of the xi(min(z,z'))-weighted double integral, with
// psi the staircase of accumulated amplifier noise (psi_weights of link-model)
// and wgt the per-span gamma ratios. Units: m^2.
cdouble assemble_R(const FreqTriple& w, const FreqTriple& wp, int s, int sp,
                   const LinkModel& link, const ChannelPlan& plan,
                   const std::vector<double>& psi);

// Closed form of the common-phase diagnostic term
//   chi0 = 2 int_0^L dz f(z) int_0^z dz' f(z') xi(z'; 0)
// with f the normalized power profile. The receiver's carrier-phase fit
// removes this family from the error variance; it is exposed only so tests
// and diagnostics can quantify what was removed. Units: m^2.
double chi0(const LinkModel& link);

} // namespace wdmsnr
