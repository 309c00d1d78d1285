// Brute-force oracles for the coefficient engine and the variance assembly.
//
// Ground truth comes from the discrete-sum definitions of the coefficients:
// per-span kernel tensors k_j[m,n,p] are computed by direct numerical
// quadrature (midpoint grids in the two outer frequencies, Gauss-Legendre in
// the gated inner frequency and along z) with no reuse of the closed-form
// code paths. Coefficients are then truncated index sums over the tensors,
// and the noise variance follows from a mechanical enumeration of Wick
// pairings over the first-order perturbation's term list, so it cannot share
// an algebra mistake with the hand-assembled variance formulas.
//
// Intended for tiny links only (cost grows as spans x grid^2 x trunc^3);
// construction throws beyond a small size guard.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "wdmsnr/coefficients.hpp"
#include "wdmsnr/constellation.hpp"
#include "wdmsnr/link.hpp"
#include "wdmsnr/span_integrals.hpp"

namespace wdmsnr {

struct OracleGrid {
  int n_outer = 220; // midpoint nodes per outer frequency axis
  int n_inner = 80;  // Gauss-Legendre nodes across the gated inner interval
  int n_z = 24;      // Gauss-Legendre nodes along each span
};

// Per-span discrete kernels for one channel pair, indices in [-trunc, trunc].
class KernelTensors {
 public:
  KernelTensors(int span_count, int trunc);

  cdouble at(int span, int m, int n, int p) const {
    return data_[static_cast<std::size_t>(span)]
                [(static_cast<std::size_t>(m + trunc_) * size_ +
                  static_cast<std::size_t>(n + trunc_)) * size_ +
                 static_cast<std::size_t>(p + trunc_)];
  }
  cdouble& at(int span, int m, int n, int p) {
    return data_[static_cast<std::size_t>(span)]
                [(static_cast<std::size_t>(m + trunc_) * size_ +
                  static_cast<std::size_t>(n + trunc_)) * size_ +
                 static_cast<std::size_t>(p + trunc_)];
  }
  int trunc() const { return trunc_; }
  int span_count() const { return static_cast<int>(data_.size()); }
  // Tensor with the first two (plain-symbol) slots swapped: the kernel of the
  // mirrored channel pair (b, a).
  KernelTensors swapped_pumps() const;

 private:
  int trunc_;
  std::size_t size_;
  std::vector<std::vector<cdouble>> data_;
};

struct OracleValue {
  double value = 0.0;
  // Fraction of the discrete-sum mass on the outermost index shells: a
  // truncation-tail bound to judge whether trunc was large enough.
  double tail_fraction = 0.0;
};

class CoeffOracle {
 public:
  // Throws std::invalid_argument when the link/truncation exceed the intended
  // tiny-instance scale (guard: spans * trunc^3 bounded).
  CoeffOracle(const LinkModel& link, const ChannelPlan& plan, int trunc,
              const OracleGrid& grid = {});

  // Lazily built (and cached) kernel tensors for channel pair (a, b).
  const KernelTensors& tensors(int a, int b);

  // Truncated-sum value of one coefficient kind (same units/normalization as
  // estimate_coefficient).
  OracleValue coefficient(const CoeffKind& kind);

  // Noise-interaction variance (single polarization, co-polarized part) by
  // mechanical Wick-pairing enumeration over the perturbation term list.
  // Pairings in which any term self-contracts are excluded: they reproduce
  // the deterministic common-phase family the receiver's gain fit absorbs.
  double sigma_ns(const ConstellationSpec& format);

  // Symbol-level Monte Carlo of the same variance: random symbols and
  // per-span noise increments contracted against the kernel tensors, with the
  // noise-conditional symbol mean subtracted (the same family the pairing
  // enumeration excludes). Cross-validates the enumerator with an estimator
  // that knows nothing about Wick algebra.
  struct McVariance {
    double value = 0.0;
    double stderr_value = 0.0;
  };
  McVariance sigma_ns_mc(const ConstellationSpec& format, int realizations,
                         std::uint64_t seed);

  // Symbol-level Monte Carlo of the signal-signal variance for
  // constant-modulus formats: cyclic symbol blocks pushed through the
  // tensors, with the (then deterministic given the linear symbols)
  // self-contraction families removed exactly. Units: normalized variance,
  // same as the assembled signal-signal value.
  McVariance sigma_ss_mc_qpsk(int block_len, int realizations,
                              std::uint64_t seed);

  const LinkModel& link() const { return link_; }
  const ChannelPlan& plan() const { return plan_; }
  int trunc() const { return trunc_; }

 private:
  LinkModel link_;
  ChannelPlan plan_;
  int trunc_;
  OracleGrid grid_;
  std::map<std::pair<int, int>, KernelTensors> cache_;

  KernelTensors build(int a, int b) const;
};

} // namespace wdmsnr
