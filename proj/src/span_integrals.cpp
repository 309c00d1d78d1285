// Closed-form span integrals (see span_integrals.hpp).

#include "wdmsnr/span_integrals.hpp"

#include <cmath>

#include "wdmsnr/units.hpp"

namespace wdmsnr {

namespace {

// Gated pulse-spectrum factor: in band iff |w| < pi/T strictly.
inline bool in_band(double w, double t_symbol) {
  return std::abs(w) < constants::pi / t_symbol;
}

// M1 = int_0^L u e^{su} du and M2 = int_0^L u^2 e^{su} du, stable for all s.
void moment_integrals(cdouble s, double length, cdouble& m1, cdouble& m2) {
  const cdouble sl = s * length;
  if (std::abs(sl) < 0.5) {
    // M_k = L^{k+1} sum_i (sL)^i / (i! (k+i+1))
    cdouble sum1{0.0, 0.0}, sum2{0.0, 0.0}, term{1.0, 0.0};
    double factorial = 1.0;
    for (int i = 0; i < 16; ++i) {
      sum1 += term / (factorial * (i + 2));
      sum2 += term / (factorial * (i + 3));
      term *= sl;
      factorial *= (i + 1);
      if (std::abs(term) / factorial < 1e-18) break;
    }
    m1 = length * length * sum1;
    m2 = length * length * length * sum2;
    return;
  }
  const cdouble e = std::exp(sl);
  const cdouble m0 = em1(s, length);
  m1 = (length * e - m0) / s;
  m2 = (length * length * e - 2.0 * m1) / s;
}

} // namespace

double gating_pi(const FreqTriple& w, int s, int sp, const ChannelPlan& plan) {
  const double t = plan.symbol_time_s;
  const bool open = in_band(w.w1 - plan.detuning(s), t) &&
                    in_band(w.w2 - plan.detuning(s + sp), t) &&
                    in_band(w.w3 - plan.detuning(sp), t) &&
                    in_band(w.w1 - w.w2 + w.w3, t);
  return open ? t * t : 0.0;
}

cdouble em1(cdouble s, double length) {
  const cdouble sl = s * length;
  if (std::abs(sl) < 1e-4) {
    return length * (1.0 + sl * (0.5 + sl * (1.0 / 6.0 + sl / 24.0)));
  }
  return (std::exp(sl) - 1.0) / s;
}

cdouble ordered_exp_pair(cdouble s, cdouble sp, double length) {
  if (std::abs(sp) * length > 1e-4) {
    return (em1(s + sp, length) - em1(s, length)) / sp;
  }
  cdouble m1, m2;
  moment_integrals(s, length, m1, m2);
  return m1 + 0.5 * sp * m2;
}

cdouble span_r(const FreqTriple& w, int s, int sp, int span_j,
               const LinkModel& link, const ChannelPlan& plan) {
  const double gate = gating_pi(w, s, sp, plan);
  if (gate == 0.0) return {0.0, 0.0};
  const std::size_t j = static_cast<std::size_t>(span_j);
  const SpanSI& span = link.spans[j];
  const double phase = mixing_phase(w);
  const cdouble sm{-span.alpha_per_m, span.beta2_s2_m * phase};
  const cdouble pre =
      std::exp(-link.delta_before(span_j)) *
      std::exp(cdouble{0.0, phase * link.beta2_acc[j]});
  return gate * pre * em1(sm, span.length_m);
}

cdouble span_pair_I(const FreqTriple& w, const FreqTriple& wp, int s, int sp,
                    int span_j, const LinkModel& link, const ChannelPlan& plan) {
  const double gate = gating_pi(w, s, sp, plan) * gating_pi(wp, s, sp, plan);
  if (gate == 0.0) return {0.0, 0.0};
  const std::size_t j = static_cast<std::size_t>(span_j);
  const SpanSI& span = link.spans[j];
  const double phase = mixing_phase(w);
  const double phase_p = mixing_phase(wp);
  const cdouble sm{-span.alpha_per_m, span.beta2_s2_m * phase};
  const cdouble sm_conj{-span.alpha_per_m, -span.beta2_s2_m * phase_p};
  const cdouble pre =
      std::exp(-2.0 * link.delta_before(span_j)) *
      std::exp(cdouble{0.0, (phase - phase_p) * link.beta2_acc[j]});
  return gate * pre * ordered_exp_pair(sm, sm_conj, span.length_m);
}

cdouble rho_total(const FreqTriple& w, int s, int sp, const LinkModel& link,
                  const ChannelPlan& plan) {
  if (gating_pi(w, s, sp, plan) == 0.0) return {0.0, 0.0};
  const double gamma_ref = link.gamma_ref();
  cdouble sum{0.0, 0.0};
  for (int j = 0; j < link.span_count(); ++j) {
    const double wgt = link.spans[static_cast<std::size_t>(j)].gamma_per_w_m / gamma_ref;
    sum += wgt * span_r(w, s, sp, j, link, plan);
  }
  return sum;
}

cdouble assemble_R(const FreqTriple& w, const FreqTriple& wp, int s, int sp,
                   const LinkModel& link, const ChannelPlan& plan,
                   const std::vector<double>& psi) {
  if (gating_pi(w, s, sp, plan) == 0.0 || gating_pi(wp, s, sp, plan) == 0.0)
    return {0.0, 0.0};
  const double gamma_ref = link.gamma_ref();
  cdouble total{0.0, 0.0};
  cdouble h{0.0, 0.0}; // running sum_{j<m} psi_j wgt_j conj(r_{w',j})
  for (int m = 0; m < link.span_count(); ++m) {
    const std::size_t k = static_cast<std::size_t>(m);
    const double wgt = link.spans[k].gamma_per_w_m / gamma_ref;
    total += wgt * span_r(w, s, sp, m, link, plan) * h;
    total += psi[k] * wgt * wgt * span_pair_I(w, wp, s, sp, m, link, plan);
    h += psi[k] * wgt * std::conj(span_r(wp, s, sp, m, link, plan));
  }
  return total;
}

double chi0(const LinkModel& link) {
  const NoiseAccumulators acc = noise_accumulators(link, 0.0);
  double total = 0.0;
  double upstream = 0.0; // sum_{j<m} psi_j F_j: noise-weighted profile area
  for (int m = 0; m < link.span_count(); ++m) {
    const std::size_t k = static_cast<std::size_t>(m);
    const SpanSI& span = link.spans[k];
    const double dpre = link.delta_before(m);
    const cdouble minus_alpha{-span.alpha_per_m, 0.0};
    const double area = std::exp(-dpre) * em1(minus_alpha, span.length_m).real();
    const double pair = std::exp(-2.0 * dpre) *
                        ordered_exp_pair(minus_alpha, minus_alpha, span.length_m).real();
    total += area * upstream + acc.psi[k] * pair;
    upstream += acc.psi[k] * area;
  }
  return 2.0 * total;
}

} // namespace wdmsnr
