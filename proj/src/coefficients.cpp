// Monte Carlo coefficient estimation (see coefficients.hpp).

#include "wdmsnr/coefficients.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "wdmsnr/rng.hpp"
#include "wdmsnr/span_integrals.hpp"
#include "wdmsnr/units.hpp"

namespace wdmsnr {

namespace {

const char* contraction_name(Contraction c) {
  switch (c) {
    case Contraction::Full: return "full";
    case Contraction::FirstPairDiag: return "pair1";
    case Contraction::LastPairDiag: return "pair2";
    case Contraction::CrossDiag: return "cross";
    case Contraction::TripleDiag: return "triple";
  }
  return "?";
}

Contraction contraction_from_name(const std::string& name) {
  if (name == "full") return Contraction::Full;
  if (name == "pair1") return Contraction::FirstPairDiag;
  if (name == "pair2") return Contraction::LastPairDiag;
  if (name == "cross") return Contraction::CrossDiag;
  if (name == "triple") return Contraction::TripleDiag;
  throw std::runtime_error("unknown contraction name: " + name);
}

int dimensionality(Contraction c) {
  switch (c) {
    case Contraction::Full: return 3;
    case Contraction::TripleDiag: return 5;
    default: return 4;
  }
}

struct BatchResult {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t accepted = 0;
};

} // namespace

std::string CoeffKind::label() const {
  std::string out = family == CoeffFamily::SignalSignal ? "ss" : "sn";
  out += "_a" + std::to_string(ch_a) + "_b" + std::to_string(ch_b);
  out += std::string("_") + contraction_name(con);
  if (family == CoeffFamily::SignalNoise) out += "_w" + std::to_string(noise_ch);
  return out;
}

bool CoeffKind::operator<(const CoeffKind& o) const {
  return std::tie(family, ch_a, ch_b, con, noise_ch) <
         std::tie(o.family, o.ch_a, o.ch_b, o.con, o.noise_ch);
}

MCEstimate estimate_coefficient(const CoeffKind& kind, const LinkModel& link,
                                const ChannelPlan& plan, const McOptions& mc) {
  const bool diag = kind.con != Contraction::Full;
  if (diag && kind.ch_a != 0)
    throw std::invalid_argument(kind.label() +
                                ": diagonal contractions require ch_a == 0");
  if ((kind.con == Contraction::TripleDiag || kind.con == Contraction::CrossDiag) &&
      kind.ch_b != 0)
    throw std::invalid_argument(kind.label() +
                                ": triple/cross contractions are intra-channel only");
  if (kind.family == CoeffFamily::SignalNoise &&
      (kind.con == Contraction::TripleDiag || kind.con == Contraction::CrossDiag))
    throw std::invalid_argument(kind.label() +
                                ": contraction not defined for the noise family");
  if (!plan.has_channel(kind.ch_a) || !plan.has_channel(kind.ch_b))
    throw std::invalid_argument(kind.label() + ": pump channel not in plan");

  const double t = plan.symbol_time_s;
  const double half = constants::pi / t;
  const int a = kind.ch_a;
  const int b = kind.ch_b;
  const int dim = dimensionality(kind.con);

  // Box centers for the independent draws, per contraction layout.
  double center[5] = {plan.detuning(a), plan.detuning(a + b), plan.detuning(b),
                      0.0, 0.0};
  switch (kind.con) {
    case Contraction::FirstPairDiag: center[3] = plan.detuning(a); break;
    case Contraction::LastPairDiag: center[3] = plan.detuning(a + b); break;
    case Contraction::CrossDiag:
      center[1] = 0.0; center[2] = 0.0; center[3] = 0.0;
      break;
    case Contraction::TripleDiag: center[3] = 0.0; center[4] = 0.0; break;
    default: break;
  }

  const std::vector<double> psi =
      kind.family == CoeffFamily::SignalNoise
          ? psi_weights(link, plan.detuning(kind.noise_ch))
          : std::vector<double>();

  const std::string label = kind.label();
  const std::uint64_t kind_hash = fnv1a(label.data(), label.size());

  const std::uint64_t batch_size = 1u << 14;
  const std::uint64_t n_batches = (mc.samples + batch_size - 1) / batch_size;
  std::vector<BatchResult> partials(n_batches);

  auto run_batch = [&](std::uint64_t batch) {
    const std::uint64_t first = batch * batch_size;
    const std::uint64_t count = std::min(batch_size, mc.samples - first);
    std::uint64_t derive = mc.seed ^ kind_hash ^ (0x9e3779b97f4a7c15ULL * (batch + 1));
    Xoshiro256pp rng(splitmix64(derive));
    BatchResult out;
    double x[5];
    for (std::uint64_t i = 0; i < count; ++i) {
      for (int k = 0; k < dim; ++k)
        x[k] = rng.uniform(center[k] - half, center[k] + half);

      FreqTriple w{x[0], x[1], x[2]};
      FreqTriple wp;
      bool ok = true;
      switch (kind.con) {
        case Contraction::Full:
          ok = std::abs(x[0] - x[1] + x[2]) < half;
          wp = w;
          break;
        case Contraction::FirstPairDiag:
          wp = {x[3], x[1], x[0] + x[2] - x[3]};
          ok = std::abs(x[0] - x[1] + x[2]) < half &&
               std::abs(wp.w3 - center[2]) < half;
          break;
        case Contraction::LastPairDiag:
          wp = {x[0], x[3], x[2] - x[1] + x[3]};
          ok = std::abs(x[0] - x[1] + x[2]) < half &&
               std::abs(wp.w3 - center[2]) < half;
          break;
        case Contraction::CrossDiag:
          w = {x[0], x[1], x[1]};
          wp = {x[2], x[3], x[0] - x[2] + x[3]};
          ok = std::abs(wp.w3) < half;
          break;
        case Contraction::TripleDiag:
          wp = {x[3], x[4], x[0] - x[1] + x[2] - x[3] + x[4]};
          ok = std::abs(x[0] - x[1] + x[2]) < half && std::abs(wp.w3) < half;
          break;
      }

      double value = 0.0;
      if (ok) {
        if (kind.family == CoeffFamily::SignalSignal) {
          if (kind.con == Contraction::Full) {
            value = std::norm(rho_total(w, a, b, link, plan));
          } else {
            value = std::real(rho_total(w, a, b, link, plan) *
                              std::conj(rho_total(wp, a, b, link, plan)));
          }
        } else {
          value = std::real(assemble_R(w, wp, a, b, link, plan, psi));
        }
        ++out.accepted;
      }
      out.sum += value;
      out.sum_sq += value * value;
    }
    partials[batch] = out;
  };

  int workers = mc.workers > 0
                    ? mc.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (static_cast<std::uint64_t>(workers) > n_batches)
    workers = static_cast<int>(n_batches);
  if (workers == 1) {
    for (std::uint64_t bidx = 0; bidx < n_batches; ++bidx) run_batch(bidx);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int wix = 0; wix < workers; ++wix) {
      pool.emplace_back([&] {
        for (std::uint64_t bidx = next.fetch_add(1); bidx < n_batches;
             bidx = next.fetch_add(1))
          run_batch(bidx);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Reduce in batch order: identical result for any worker count.
  double sum = 0.0, sum_sq = 0.0;
  std::uint64_t accepted = 0;
  for (const BatchResult& p : partials) {
    sum += p.sum;
    sum_sq += p.sum_sq;
    accepted += p.accepted;
  }
  if (accepted == 0)
    throw std::runtime_error(label + ": no admissible samples (empty FWM support "
                                     "for this plan/detuning)");

  const double n = static_cast<double>(mc.samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  // All estimators reduce to box_volume/(2pi)^dim * (extra T powers) = T^-4,
  // with an extra factor 2 for the noise family's half-domain z-ordering.
  double prefactor = 1.0 / (t * t * t * t);
  if (kind.family == CoeffFamily::SignalNoise) prefactor *= 2.0;

  MCEstimate est;
  est.value = prefactor * mean;
  est.stderr_value = prefactor * std::sqrt(var / n);
  est.samples = mc.samples;
  est.accepted = accepted;
  est.seed = mc.seed;
  return est;
}

std::vector<CoeffKind> kinds_for_plan(const ChannelPlan& plan,
                                      const KindSelection& select) {
  std::vector<CoeffKind> kinds;
  auto add = [&kinds](CoeffFamily fam, int a, int b, Contraction con, int w = 0) {
    kinds.push_back(CoeffKind{fam, a, b, con, fam == CoeffFamily::SignalNoise ? w : 0});
  };

  add(CoeffFamily::SignalSignal, 0, 0, Contraction::Full);
  add(CoeffFamily::SignalSignal, 0, 0, Contraction::FirstPairDiag);
  add(CoeffFamily::SignalSignal, 0, 0, Contraction::LastPairDiag);
  add(CoeffFamily::SignalSignal, 0, 0, Contraction::TripleDiag);
  if (select.cross_diag)
    add(CoeffFamily::SignalSignal, 0, 0, Contraction::CrossDiag);
  if (select.signal_noise) {
    add(CoeffFamily::SignalNoise, 0, 0, Contraction::Full);
    add(CoeffFamily::SignalNoise, 0, 0, Contraction::FirstPairDiag);
    add(CoeffFamily::SignalNoise, 0, 0, Contraction::LastPairDiag);
  }

  for (int s : plan.channel_indices()) {
    if (s == 0) continue;
    add(CoeffFamily::SignalSignal, 0, s, Contraction::Full);
    add(CoeffFamily::SignalSignal, 0, s, Contraction::LastPairDiag);
    if (select.signal_noise) {
      add(CoeffFamily::SignalNoise, 0, s, Contraction::Full, 0);
      add(CoeffFamily::SignalNoise, 0, s, Contraction::Full, s);
      add(CoeffFamily::SignalNoise, 0, s, Contraction::LastPairDiag, 0);
    }
  }

  if (select.ndfwm) {
    for (int s : plan.channel_indices()) {
      for (int sp : plan.channel_indices()) {
        if (s == 0 || sp == 0 || s == sp) continue;
        const bool sum_in_plan = plan.has_channel(s + sp);
        if (sum_in_plan) add(CoeffFamily::SignalSignal, s, sp, Contraction::Full);
        if (select.signal_noise) {
          // The noise factor may sit in the s+sp slot even when no channel
          // transmits there; the other two noise placements require the
          // partner channel to exist.
          add(CoeffFamily::SignalNoise, s, sp, Contraction::Full, s + sp);
          if (sum_in_plan) {
            add(CoeffFamily::SignalNoise, s, sp, Contraction::Full, s);
            add(CoeffFamily::SignalNoise, s, sp, Contraction::Full, sp);
          }
        }
      }
    }
  }
  return kinds;
}

const MCEstimate& CoefficientSet::at(const CoeffKind& kind) const {
  auto it = values.find(kind);
  if (it == values.end())
    throw std::runtime_error("coefficient set is missing kind " + kind.label());
  return it->second;
}

double CoefficientSet::value_or_zero(const CoeffKind& kind) const {
  auto it = values.find(kind);
  return it == values.end() ? 0.0 : it->second.value;
}

CoefficientSet estimate_all(const LinkModel& link, const ChannelPlan& plan,
                            const McOptions& mc, const KindSelection& select) {
  CoefficientSet set;
  set.fingerprint = link_fingerprint(link, plan);
  set.symbol_time_s = plan.symbol_time_s;
  for (const CoeffKind& kind : kinds_for_plan(plan, select)) {
    McOptions per = mc;
    const int dim = dimensionality(kind.con);
    if (dim == 4) per.samples = mc.samples * 2;
    if (dim == 5) per.samples = mc.samples * 4;
    set.values[kind] = estimate_coefficient(kind, link, plan, per);
  }
  return set;
}

std::uint64_t link_fingerprint(const LinkModel& link, const ChannelPlan& plan) {
  std::string canon;
  canon.reserve(256);
  char buf[64];
  auto put = [&canon, &buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g;", v);
    canon += buf;
  };
  canon += link.mode == AmplifierMode::ConstantGain ? "gain;" : "power;";
  canon += link.convention == AmpNoiseConvention::LinearGainMinusOne ? "em1;" : "g;";
  put(link.omega0);
  for (const SpanSI& s : link.spans) {
    put(s.length_m);
    put(s.alpha_per_m);
    put(s.beta2_s2_m);
    put(s.gamma_per_w_m);
  }
  for (const AmplifierSI& amp : link.amps) put(amp.nsp);
  put(plan.symbol_time_s);
  put(plan.spacing_rad_s);
  put(static_cast<double>(plan.count));
  if (link.mode == AmplifierMode::ConstantOutputPower) {
    // Depletion exponents enter the kernels, so the power matters here.
    put(link.built_for_power_w);
    put(plan.ase_bandwidth_hz);
  }
  return fnv1a(canon.data(), canon.size());
}

std::string coefficient_set_to_json(const CoefficientSet& set) {
  nlohmann::json root;
  root["fingerprint"] = set.fingerprint;
  root["symbol_time_s"] = set.symbol_time_s;
  nlohmann::json values = nlohmann::json::object();
  for (const auto& [kind, est] : set.values) {
    values[kind.label()] = {
        {"value", est.value},         {"stderr", est.stderr_value},
        {"samples", est.samples},     {"accepted", est.accepted},
        {"seed", est.seed},
    };
  }
  root["values"] = std::move(values);
  return root.dump(2);
}

namespace {

CoeffKind kind_from_label(const std::string& label) {
  CoeffKind kind;
  std::size_t pos = label.find('_');
  const std::string fam = label.substr(0, pos);
  if (fam == "ss") kind.family = CoeffFamily::SignalSignal;
  else if (fam == "sn") kind.family = CoeffFamily::SignalNoise;
  else throw std::runtime_error("bad coefficient label: " + label);

  std::vector<std::string> parts;
  while (pos != std::string::npos) {
    const std::size_t next = label.find('_', pos + 1);
    parts.push_back(label.substr(pos + 1, next == std::string::npos
                                              ? std::string::npos
                                              : next - pos - 1));
    pos = next;
  }
  if (parts.size() < 3) throw std::runtime_error("bad coefficient label: " + label);
  kind.ch_a = std::stoi(parts[0].substr(1));
  kind.ch_b = std::stoi(parts[1].substr(1));
  kind.con = contraction_from_name(parts[2]);
  if (kind.family == CoeffFamily::SignalNoise) {
    if (parts.size() != 4 || parts[3].empty() || parts[3][0] != 'w')
      throw std::runtime_error("bad coefficient label: " + label);
    kind.noise_ch = std::stoi(parts[3].substr(1));
  }
  return kind;
}

} // namespace

CoefficientSet coefficient_set_from_json(const std::string& text,
                                         std::uint64_t expected_fingerprint) {
  nlohmann::json root = nlohmann::json::parse(text);
  CoefficientSet set;
  set.fingerprint = root.at("fingerprint").get<std::uint64_t>();
  set.symbol_time_s = root.at("symbol_time_s").get<double>();
  if (expected_fingerprint != 0 && set.fingerprint != expected_fingerprint)
    throw std::runtime_error("coefficient cache fingerprint mismatch");
  for (const auto& [label, entry] : root.at("values").items()) {
    MCEstimate est;
    est.value = entry.at("value").get<double>();
    est.stderr_value = entry.at("stderr").get<double>();
    est.samples = entry.at("samples").get<std::uint64_t>();
    est.accepted = entry.at("accepted").get<std::uint64_t>();
    est.seed = entry.at("seed").get<std::uint64_t>();
    set.values[kind_from_label(label)] = est;
  }
  return set;
}

} // namespace wdmsnr
