// Link model construction and ASE bookkeeping (see link.hpp).

#include "wdmsnr/link.hpp"

#include <cmath>

#include "wdmsnr/units.hpp"

namespace wdmsnr {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

// Amplifier noise strength factor A(g) per the link's convention.
double noise_gain_factor(AmpNoiseConvention convention, double g) {
  return convention == AmpNoiseConvention::LinearGainMinusOne ? std::expm1(g) : g;
}

} // namespace

LinkConfig make_uniform_link(int span_count, const SpanConfig& span, double nf_db,
                             double lambda0_nm, AmplifierMode mode) {
  LinkConfig cfg;
  cfg.spans.assign(static_cast<std::size_t>(span_count), span);
  cfg.nf_db = nf_db;
  cfg.lambda0_nm = lambda0_nm;
  cfg.mode = mode;
  return cfg;
}

std::vector<int> ChannelPlan::channel_indices() const {
  std::vector<int> s(static_cast<std::size_t>(count));
  const int lo = -((count - 1) / 2);
  for (int i = 0; i < count; ++i) s[static_cast<std::size_t>(i)] = lo + i;
  return s;
}

bool ChannelPlan::has_channel(int s) const {
  const int lo = -((count - 1) / 2);
  return s >= lo && s < lo + count;
}

ChannelPlan make_plan(double symbol_rate_gbd, double spacing_ghz, int count,
                      double power_dbm, double lambda0_nm, double ase_bandwidth_ghz) {
  ChannelPlan plan;
  plan.symbol_time_s = 1.0 / (symbol_rate_gbd * 1e9);
  plan.spacing_rad_s = 2.0 * constants::pi * spacing_ghz * 1e9;
  plan.count = count;
  plan.power_w = units::dbm_to_watt(power_dbm);
  plan.omega0_rad_s = units::wavelength_to_omega0(lambda0_nm * 1e-9);
  plan.ase_bandwidth_hz = ase_bandwidth_ghz * 1e9;
  return plan;
}

LinkModel build_link(const LinkConfig& config, const ChannelPlan& plan) {
  require(!config.spans.empty(), "link.spans: at least one span required");
  require(config.lambda0_nm > 0.0, "link.lambda0_nm: must be positive");
  require(plan.symbol_time_s > 0.0, "plan.symbol_rate: must be positive");
  require(plan.count >= 1, "plan.count: must be >= 1");
  require(plan.power_w > 0.0, "plan.power_dbm: power must be positive");
  if (plan.count > 1) {
    require(plan.spacing_rad_s >= 2.0 * constants::pi / plan.symbol_time_s,
            "plan.spacing_ghz: channel overlap (spacing below the symbol rate)");
  }

  LinkModel link;
  link.mode = config.mode;
  link.convention = config.convention;
  link.omega0 = units::wavelength_to_omega0(config.lambda0_nm * 1e-9);

  for (std::size_t i = 0; i < config.spans.size(); ++i) {
    const SpanConfig& sc = config.spans[i];
    const std::string where = "link.spans[" + std::to_string(i) + "].";
    require(sc.length_km > 0.0, where + "length_km: must be positive");
    require(sc.alpha_db_km >= 0.0, where + "alpha_db_km: must be nonnegative");
    require(sc.gamma_per_w_km >= 0.0, where + "gamma_per_w_km: must be nonnegative");
    SpanSI span;
    span.length_m = sc.length_km * 1e3;
    span.alpha_per_m = units::alpha_db_km_to_per_m(sc.alpha_db_km);
    span.beta2_s2_m =
        units::dispersion_to_beta2(sc.dispersion_ps_nm_km, config.lambda0_nm * 1e-9);
    span.gamma_per_w_m = units::gamma_per_w_km_to_per_w_m(sc.gamma_per_w_km);
    link.spans.push_back(span);

    AmplifierSI amp;
    const double nf = sc.nf_db.value_or(config.nf_db);
    require(nf >= 0.0, where + "nf_db: must be nonnegative");
    amp.nsp = units::noise_figure_db_to_nsp(nf);
    link.amps.push_back(amp);
  }

  return rebuild_for_power(link, plan, plan.power_w);
}

LinkModel rebuild_for_power(const LinkModel& link, const ChannelPlan& plan,
                            double power_w) {
  if (power_w <= 0.0) throw std::domain_error("launch power must be positive");
  LinkModel out = link;
  const int ns = out.span_count();
  out.built_for_power_w = power_w;
  out.z.assign(1, 0.0);
  out.beta2_acc.assign(static_cast<std::size_t>(ns), 0.0);
  out.l.resize(static_cast<std::size_t>(ns));
  out.g.resize(static_cast<std::size_t>(ns));
  out.d.resize(static_cast<std::size_t>(ns));
  out.delta.resize(static_cast<std::size_t>(ns));
  out.eta.resize(static_cast<std::size_t>(ns));
  out.zeta.resize(static_cast<std::size_t>(ns));

  // Depletion bandwidth: ASE over this band (both polarizations) competes with
  // the signal for amplifier output power.
  double b_dep = plan.ase_bandwidth_hz;
  if (b_dep <= 0.0) {
    b_dep = plan.count > 1
                ? plan.count * plan.spacing_rad_s / (2.0 * constants::pi)
                : plan.symbol_rate_hz();
  }
  const double hbar_w0 = constants::hbar * out.omega0;

  double beta2_running = 0.0;
  double delta_running = 0.0;
  for (int j = 0; j < ns; ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    const SpanSI& span = out.spans[k];
    out.beta2_acc[k] = beta2_running;
    beta2_running += span.beta2_s2_m * span.length_m;
    out.z.push_back(out.z.back() + span.length_m);

    out.l[k] = span.alpha_per_m * span.length_m;
    out.eta[k] = std::exp(-out.l[k]);
    // Both-polarization ASE power over the depletion band, as a fraction of
    // the total launch power shared by all channels.
    out.zeta[k] = 2.0 * hbar_w0 * out.amps[k].nsp * b_dep /
                  (static_cast<double>(plan.count) * power_w);
    if (out.mode == AmplifierMode::ConstantOutputPower) {
      out.d[k] = std::log((1.0 + std::exp(out.l[k]) * out.zeta[k]) /
                          (1.0 + out.zeta[k]));
    } else {
      out.d[k] = 0.0;
    }
    delta_running += out.d[k];
    out.delta[k] = delta_running;
    out.g[k] = out.l[k] - out.d[k];
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>>
depletion_exponents(const LinkModel& link, const ChannelPlan& plan, double power_w) {
  const LinkModel fresh = rebuild_for_power(link, plan, power_w);
  std::vector<double> delta_with_zero(1, 0.0);
  delta_with_zero.insert(delta_with_zero.end(), fresh.delta.begin(), fresh.delta.end());
  return {fresh.d, delta_with_zero};
}

NoiseAccumulators noise_accumulators(const LinkModel& link, double omega) {
  NoiseAccumulators acc;
  const int ns = link.span_count();
  acc.xi.resize(static_cast<std::size_t>(ns));
  acc.psi.resize(static_cast<std::size_t>(ns));
  double prefix_at_zero = 0.0;
  for (int j = 0; j < ns; ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    acc.psi[k] = prefix_at_zero; // noise from amplifiers strictly before span j+1
    const double a = noise_gain_factor(link.convention, link.g[k]);
    acc.xi[k] = a * std::exp(link.delta[k]) * link.amps[k].nsp_at(omega);
    prefix_at_zero += a * std::exp(link.delta[k]) * link.amps[k].nsp_at(0.0);
  }
  return acc;
}

std::vector<double> psi_weights(const LinkModel& link, double omega) {
  const int ns = link.span_count();
  std::vector<double> psi(static_cast<std::size_t>(ns));
  double prefix = 0.0;
  for (int j = 0; j < ns; ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    psi[k] = prefix;
    prefix += noise_gain_factor(link.convention, link.g[k]) *
              std::exp(link.delta[k]) * link.amps[k].nsp_at(omega);
  }
  return psi;
}

double sigma_qn_sq(const ChannelPlan& plan) {
  return constants::hbar * plan.omega0_rad_s / plan.symbol_time_s;
}

double ase_variance(const LinkModel& link, const ChannelPlan& plan) {
  double sum = 0.0;
  for (int j = 0; j < link.span_count(); ++j) {
    const std::size_t k = static_cast<std::size_t>(j);
    sum += noise_gain_factor(link.convention, link.g[k]) *
           std::exp(link.delta[k]) * link.amps[k].nsp_at(0.0);
  }
  return sigma_qn_sq(plan) / link.built_for_power_w * sum;
}

} // namespace wdmsnr
