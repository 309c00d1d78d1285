// Link model: spans, amplifiers, channel plan, and the derived per-span
// quantities every other module consumes (loss/gain exponents, ASE depletion
// exponents, noise accumulators, quantum-noise scale).
//
// Engineering-unit configs enter through build_link; everything stored in
// LinkModel is SI. A LinkModel is immutable after build and safe to share
// across threads.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wdmsnr {

// EDFA operating mode. ConstantGain: amplifier exactly undoes span loss and
// the signal is never depleted by ASE (d_n = 0). ConstantOutputPower: total
// output power (signal + accumulated ASE) is held at the launch power, so the
// signal is progressively depleted (d_n > 0).
enum class AmplifierMode { ConstantGain, ConstantOutputPower };

// How a lumped amplifier's ASE contribution scales with its gain exponent g:
// LinearGainMinusOne uses (e^g - 1) (physical EDFA photon statistics; default),
// GainExponent uses g itself (a small-gain approximation kept selectable for
// cross-checks).
enum class AmpNoiseConvention { LinearGainMinusOne, GainExponent };

// --- engineering-unit configuration -------------------------------------

struct SpanConfig {
  double length_km = 0.0;
  double alpha_db_km = 0.0;
  double dispersion_ps_nm_km = 0.0;
  double gamma_per_w_km = 0.0;
  std::optional<double> nf_db; // per-span override of LinkConfig::nf_db
};

struct LinkConfig {
  std::vector<SpanConfig> spans;
  double nf_db = 5.0;                  // amplifier noise figure, all spans
  double lambda0_nm = 1550.0;          // carrier wavelength
  AmplifierMode mode = AmplifierMode::ConstantGain;
  AmpNoiseConvention convention = AmpNoiseConvention::LinearGainMinusOne;
};

// Convenience: N identical spans.
LinkConfig make_uniform_link(int span_count, const SpanConfig& span, double nf_db,
                             double lambda0_nm = 1550.0,
                             AmplifierMode mode = AmplifierMode::ConstantGain);

// --- channel plan --------------------------------------------------------

struct ChannelPlan {
  double symbol_time_s = 0.0;   // T
  double spacing_rad_s = 0.0;   // channel grid pitch (rad/s)
  int count = 1;
  double power_w = 1e-3;        // per-channel launch power, both polarizations
  double omega0_rad_s = 0.0;    // optical carrier (for hbar*omega0)
  double ase_bandwidth_hz = 0.0; // band over which ASE depletes the signal;
                                 // 0 means "count * spacing" at build time

  // Channel indices relative to the channel of interest (s = 0). A plan of N
  // channels uses s in [-floor((N-1)/2), ...]; for even N the extra channel
  // sits on the positive side, e.g. N=2 -> {0, +1}.
  std::vector<int> channel_indices() const;
  double detuning(int s) const { return s * spacing_rad_s; }
  bool has_channel(int s) const;
  double symbol_rate_hz() const { return 1.0 / symbol_time_s; }
};

ChannelPlan make_plan(double symbol_rate_gbd, double spacing_ghz, int count,
                      double power_dbm, double lambda0_nm = 1550.0,
                      double ase_bandwidth_ghz = 0.0);

// --- SI link model --------------------------------------------------------

struct SpanSI {
  double length_m = 0.0;
  double alpha_per_m = 0.0;    // power attenuation
  double beta2_s2_m = 0.0;
  double gamma_per_w_m = 0.0;
};

struct AmplifierSI {
  double nsp = 0.0;            // spontaneous-emission factor at band center
  double nsp_at(double /*omega*/) const { return nsp; } // flat ASE spectrum
};

struct LinkModel {
  std::vector<SpanSI> spans;     // index j = span m = j+1
  std::vector<AmplifierSI> amps; // amplifier at the end of span j
  AmplifierMode mode = AmplifierMode::ConstantGain;
  AmpNoiseConvention convention = AmpNoiseConvention::LinearGainMinusOne;
  double omega0 = 0.0;

  // Derived, populated by build_link (power-dependent in constant-output-power
  // mode; the power they were computed at is recorded in built_for_power_w).
  double built_for_power_w = 0.0;
  std::vector<double> z;          // span boundaries, z[0]=0, size Ns+1
  std::vector<double> beta2_acc;  // sum beta2_j*L_j over spans before span j
  std::vector<double> l;          // span loss exponents alpha_j*L_j
  std::vector<double> g;          // amplifier gain exponents
  std::vector<double> d;          // per-amplifier depletion exponents
  std::vector<double> delta;      // accumulated depletion after amp j
  std::vector<double> eta;        // field-power span transmission e^{-l_j}
  std::vector<double> zeta;       // ASE-to-signal power ratio per amplifier

  int span_count() const { return static_cast<int>(spans.size()); }
  double total_length() const { return z.back(); }
  double delta_before(int j) const { return j == 0 ? 0.0 : delta[j - 1]; }
  // gamma of the first span is the reference the coefficients are expressed in
  double gamma_ref() const { return spans.front().gamma_per_w_m; }
};

// Validates the configuration, converts to SI, and computes all derived
// quantities at plan.power_w. Throws std::invalid_argument naming the bad
// field on validation failure (negative lengths/powers, channel overlap
// spacing < 2*pi/T, empty span list).
LinkModel build_link(const LinkConfig& config, const ChannelPlan& plan);

// Recomputes power-dependent derived state for a different per-channel launch
// power (no-op in constant-gain mode).
LinkModel rebuild_for_power(const LinkModel& link, const ChannelPlan& plan, double power_w);

// Depletion exponents at a given launch power: d_n = ln((1+e^{l_n} zeta_n)/(1+zeta_n))
// in constant-output-power mode, all zero in constant-gain mode. Returns
// (d_1..d_Ns, delta_0..delta_Ns) with delta_0 = 0. Throws std::domain_error
// for P <= 0.
std::pair<std::vector<double>, std::vector<double>>
depletion_exponents(const LinkModel& link, const ChannelPlan& plan, double power_w);

// Per-amplifier ASE strengths xi_n(omega) and their prefix sums
// psi_n = sum_{j<n} xi_j(0) (psi_1 = 0): the staircase weights of accumulated
// amplifier noise seen by span n.
struct NoiseAccumulators {
  std::vector<double> xi;  // xi[j]: amplifier at end of span j, at omega
  std::vector<double> psi; // psi[j]: noise accumulated before span j, at 0
};
NoiseAccumulators noise_accumulators(const LinkModel& link, double omega = 0.0);

// psi-style prefix weights evaluated with xi at a given detuning (equals
// NoiseAccumulators::psi when the ASE spectrum is flat).
std::vector<double> psi_weights(const LinkModel& link, double omega);

// Quantum noise scale hbar*omega0/T (W): one photon per symbol time.
double sigma_qn_sq(const ChannelPlan& plan);

// Accumulated-ASE variance normalized to unit signal power:
// sigma^2 = (sigma_qn^2 / P) * sum_n A(g_n) e^{delta_n} n_sp,n(0), where A is
// set by the link's AmpNoiseConvention. Single-polarization normalization;
// the dual-polarization budget doubles it.
double ase_variance(const LinkModel& link, const ChannelPlan& plan);

} // namespace wdmsnr
