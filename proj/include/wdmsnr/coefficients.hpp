// Nonlinear-interference coefficient kinds and their Monte Carlo estimation.
//
// Every coefficient is an integral of products of the whole-link kernel over
// the Nyquist-gated frequency region. A kind is identified by
//   * family: signal-signal (kernel x kernel) or signal-noise (the
//     noise-weighted double-z assembly R),
//   * the kernel's channel pair (a, b): which channels pump the mixing
//     product (a = b = 0 for intra-channel, a = 0 for degenerate
//     inter-channel, a != b both nonzero for non-degenerate FWM),
//   * a contraction: which symbol-index diagonal the underlying discrete sum
//     is restricted to (full sum, first-pair/last-pair/triple diagonals, or
//     the mixed cross-diagonal),
//   * for signal-noise kinds, the detuning index of the ASE band entering the
//     noise accumulator.
//
// Estimation draws each free frequency uniformly from its channel-shifted
// Nyquist interval, rejects samples where a dependent gating factor falls out
// of band, and scales by the sampled box volume. Batch-indexed substreams make
// the result independent of worker count.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wdmsnr/link.hpp"

namespace wdmsnr {

enum class CoeffFamily { SignalSignal, SignalNoise };

enum class Contraction {
  Full,          // unrestricted index sum: the Gaussian-statistics part
  FirstPairDiag, // first two indices equal (format-dependent part)
  LastPairDiag,  // last two indices equal (format-dependent part)
  CrossDiag,     // last-pair diagonal against triple diagonal (real part)
  TripleDiag     // all three indices equal (sixth-moment part)
};

struct CoeffKind {
  CoeffFamily family = CoeffFamily::SignalSignal;
  int ch_a = 0;
  int ch_b = 0;
  Contraction con = Contraction::Full;
  int noise_ch = 0; // SignalNoise only

  std::string label() const;
  bool operator<(const CoeffKind& o) const;
};

struct MCEstimate {
  double value = 0.0;
  double stderr_value = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t accepted = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  std::uint64_t samples = 1u << 20;
  std::uint64_t seed = 1;
  int workers = 0; // 0: hardware concurrency
};

// Unbiased MC estimate of one coefficient (units m^2). Throws
// std::runtime_error naming the kind if no sample lands in the admissible
// region, and std::invalid_argument for kinds inconsistent with the plan
// (e.g. degenerate kinds with ch_a != 0, NDFWM kinds with ch_a == ch_b).
MCEstimate estimate_coefficient(const CoeffKind& kind, const LinkModel& link,
                                const ChannelPlan& plan, const McOptions& mc);

// Which kinds a plan needs for the variance assembly.
struct KindSelection {
  bool signal_noise = true;  // include the ASE-interaction family
  bool ndfwm = true;         // include non-degenerate FWM kinds
  bool cross_diag = false;   // off by default: contributes negligibly and its
                             // printed source is suspect; oracle available
};
std::vector<CoeffKind> kinds_for_plan(const ChannelPlan& plan,
                                      const KindSelection& select);

// A complete, cacheable set of estimates for one (link, plan).
struct CoefficientSet {
  std::map<CoeffKind, MCEstimate> values;
  std::uint64_t fingerprint = 0;
  double symbol_time_s = 0.0;

  bool has(const CoeffKind& kind) const { return values.count(kind) != 0; }
  // Fetch with a clear assembly error naming the missing kind.
  const MCEstimate& at(const CoeffKind& kind) const;
  // Zero when the kind was deliberately not estimated (ablations).
  double value_or_zero(const CoeffKind& kind) const;
};

// Estimate every kind in the selection. Sample counts are scaled per kind
// dimensionality (4-D and 5-D integrals get more draws).
CoefficientSet estimate_all(const LinkModel& link, const ChannelPlan& plan,
                            const McOptions& mc, const KindSelection& select);

// Stable fingerprint of everything the coefficients depend on (SI link
// parameters, plan geometry, amplifier mode/convention, launch power in
// constant-output-power mode). Used to validate cache reuse.
std::uint64_t link_fingerprint(const LinkModel& link, const ChannelPlan& plan);

// JSON (de)serialization for caching across runs. from_json throws
// std::runtime_error on malformed input or fingerprint mismatch with
// `expected_fingerprint` (pass 0 to skip the check).
std::string coefficient_set_to_json(const CoefficientSet& set);
CoefficientSet coefficient_set_from_json(const std::string& text,
                                         std::uint64_t expected_fingerprint);

} // namespace wdmsnr
