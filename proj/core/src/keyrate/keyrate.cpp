#include "diqss/keyrate/keyrate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "diqss/errors.hpp"
#include "diqss/quantum/ghz.hpp"

namespace diqss::keyrate {

namespace {

constexpr double kTwoSqrt2 = 2.0 * 1.41421356237309504880;

double chsh_closed_form(const quantum::NoiseParams& noise) {
  const double eta3 = std::pow(noise.local_efficiency, 3);
  return std::min(kTwoSqrt2, kTwoSqrt2 * noise.fidelity * eta3);
}

}  // namespace

double ProtocolParams::lambda_weight() const {
  const double p = first_basis_prob;
  const double pb = 1.0 - p;
  return p * p / (p * p + pb * pb);
}

void ProtocolParams::validate() const {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(first_basis_prob)) throw std::invalid_argument("p must be in [0,1]");
  if (!in_unit(test_basis_prob)) throw std::invalid_argument("P_c must be in [0,1]");
  if (!in_unit(gsm_success_prob)) throw std::invalid_argument("P_GHZ must be in [0,1]");
  if (!(noise_preprocessing >= 0.0 && noise_preprocessing <= 0.5)) {
    throw std::invalid_argument("q must be in [0, 0.5]");
  }
  if (solver_resolution < 8) {
    throw std::invalid_argument("solver_resolution must be >= 8");
  }
}

RInfBase r_infinity_base(double S, double delta, double p) {
  if (S > kTwoSqrt2 + 1e-9) {
    throw std::domain_error("S exceeds the quantum bound 2*sqrt(2)");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("delta must be in [0,1]");
  }
  RInfBase out;
  double secrecy = 0.0;
  if (S >= 2.0) {
    const double x = std::sqrt(std::min(S, kTwoSqrt2) * S / 4.0 - 1.0);
    secrecy = g_base(std::min(1.0, x));
  } else {
    out.below_chsh = true;
  }
  out.value = p * p * (secrecy - binary_entropy(delta));
  return out;
}

RInfAdvanced r_infinity_advanced(double S, const quantum::NoiseParams& noise,
                                 const ProtocolParams& proto) {
  proto.validate();
  noise.validate();
  if (S > kTwoSqrt2 + 1e-9) {
    throw std::domain_error("S exceeds the quantum bound 2*sqrt(2)");
  }
  const double q = proto.noise_preprocessing;
  RInfAdvanced out;
  out.diagnostics.delta_ar =
      quantum::qber(noise, quantum::Strategy::advanced, q);

  double e_tilde = 0.0;
  if (S >= 2.0) {
    out.diagnostics.bound = eve_correlation_bound(
        std::min(S, kTwoSqrt2), proto.lambda_weight(), proto.sense,
        proto.solver_resolution);
    e_tilde = out.diagnostics.bound.e_tilde;
    out.diagnostics.entropy_literal_at_S = noise_entropy(S, q, Interpretation::kLiteral);
  } else {
    out.diagnostics.below_chsh = true;
  }
  out.diagnostics.entropy_correlator =
      noise_entropy(std::min(1.0, e_tilde), q, Interpretation::kCorrelator);

  // kLiteral as the configured interpretation feeds E_tilde to the literal
  // form, whose domain starts at 2; the domain error it raises is the
  // documented outcome for that configuration.
  const double secrecy =
      proto.interpretation == Interpretation::kCorrelator
          ? out.diagnostics.entropy_correlator
          : noise_entropy(e_tilde, q, Interpretation::kLiteral);

  const double p = proto.first_basis_prob;
  const double pb = 1.0 - p;
  out.value = (p * p + pb * pb) *
              (secrecy - binary_entropy(out.diagnostics.delta_ar));
  return out;
}

double r_infinity_raw(const quantum::NoiseParams& noise, const ProtocolParams& proto) {
  const double S = chsh_closed_form(noise);
  switch (proto.strategy) {
    case quantum::Strategy::base:
      return r_infinity_base(S, quantum::qber(noise, quantum::Strategy::base),
                             proto.first_basis_prob)
          .value;
    case quantum::Strategy::postselect:
      return r_infinity_base(S, quantum::qber(noise, quantum::Strategy::postselect),
                             proto.first_basis_prob)
          .value;
    case quantum::Strategy::advanced:
      return r_infinity_advanced(S, noise, proto).value;
  }
  throw std::invalid_argument("unknown strategy");
}

double practical_efficiency(double e_m, double r_inf, const ProtocolParams& proto,
                            double rep_rate_hz) {
  proto.validate();
  if (e_m < 0.0 || r_inf < 0.0 || rep_rate_hz < 0.0) {
    throw std::invalid_argument("practical_efficiency inputs must be >= 0");
  }
  return (1.0 - proto.test_basis_prob) * proto.gsm_success_prob * rep_rate_hz *
         e_m * r_inf;
}

KeyRateReport evaluate_keyrate(const heralding::ChannelParams& channel,
                               const quantum::NoiseParams& noise,
                               const ProtocolParams& proto) {
  channel.validate();
  noise.validate();
  proto.validate();

  KeyRateReport report;
  report.channel = channel;
  report.noise = noise;
  report.proto = proto;

  const auto rho = quantum::white_noise_state(noise.fidelity);
  report.chsh = quantum::chsh_value(rho, noise.local_efficiency);
  report.svetlichny = quantum::svetlichny_value(rho, noise.local_efficiency);

  const double p = proto.first_basis_prob;
  switch (proto.strategy) {
    case quantum::Strategy::base:
    case quantum::Strategy::postselect: {
      report.delta = quantum::qber(noise, proto.strategy);
      const RInfBase r = r_infinity_base(chsh_closed_form(noise), report.delta, p);
      report.r_inf = r.value;
      report.below_chsh = r.below_chsh;
      report.r_111 = p > 0.0 ? r.value / (p * p) : 0.0;
      break;
    }
    case quantum::Strategy::advanced: {
      report.delta = quantum::qber(noise, quantum::Strategy::advanced,
                                   proto.noise_preprocessing);
      const RInfAdvanced r =
          r_infinity_advanced(chsh_closed_form(noise), noise, proto);
      report.r_inf = r.value;
      report.below_chsh = r.diagnostics.below_chsh;
      report.e_tilde = r.diagnostics.bound.e_tilde;
      const double pb = 1.0 - p;
      const double per_basis = r.value / (p * p + pb * pb);
      report.r_111 = per_basis;
      report.r_212 = per_basis;
      break;
    }
  }

  report.e_m = heralding::loading_stats(channel).efficiency;
  report.r_inf_clamped = report.r_inf < 0.0;
  report.e_c = practical_efficiency(report.e_m, std::max(report.r_inf, 0.0), proto,
                                    channel.rep_rate_hz);
  return report;
}

namespace {

template <typename Fn>
double bisect_root(Fn&& f, double lo, double hi, double tol, const std::string& what) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) {
    throw BracketError("no sign change for " + what + " in [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (fm * flo < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double threshold_fidelity(double eta_l, quantum::Strategy strategy,
                          const ProtocolParams& proto) {
  if (!(eta_l > 0.0 && eta_l <= 1.0)) {
    throw std::invalid_argument("eta_l must be in (0,1]");
  }
  ProtocolParams pp = proto;
  pp.strategy = strategy;
  auto f = [&](double F) {
    return r_infinity_raw(quantum::NoiseParams{F, eta_l}, pp);
  };
  return bisect_root(f, 0.5, 1.0, 1e-6, "fidelity threshold");
}

double threshold_local_efficiency(double fidelity, quantum::Strategy strategy,
                                  double q, const ProtocolParams& proto) {
  if (!(fidelity > 0.0 && fidelity <= 1.0)) {
    throw std::invalid_argument("fidelity must be in (0,1]");
  }
  ProtocolParams pp = proto;
  pp.strategy = strategy;
  pp.noise_preprocessing = q;
  auto f = [&](double eta) {
    return r_infinity_raw(quantum::NoiseParams{fidelity, eta}, pp);
  };
  return bisect_root(f, 0.5, 1.0, 1e-6, "local efficiency threshold");
}

double secure_distance(const heralding::ChannelParams& channel,
                       const quantum::NoiseParams& noise,
                       const ProtocolParams& proto, double target_ec) {
  if (!(target_ec > 0.0)) throw std::invalid_argument("target_ec must be > 0");
  channel.validate();

  // R_inf does not depend on distance; the heralded architecture confines
  // transmission loss to E_m.
  const double r_inf = std::max(0.0, r_infinity_raw(noise, proto));
  auto ec_at = [&](double d) {
    heralding::ChannelParams ch = channel;
    ch.distance_km = d;
    return practical_efficiency(heralding::loading_stats(ch).efficiency, r_inf,
                                proto, channel.rep_rate_hz);
  };

  if (ec_at(0.0) < target_ec) {
    throw BracketError("target efficiency unreachable at d = 0");
  }
  double hi = 100.0;
  while (ec_at(hi) >= target_ec) {
    hi *= 2.0;
    if (hi > 1e7) throw BracketError("target efficiency never reached");
  }
  auto f = [&](double d) { return ec_at(d) - target_ec; };
  return bisect_root(f, 0.0, hi, 0.01, "secure distance");
}

BaselineReport baseline_efficiency(BaselineModel model, double d_km,
                                   const quantum::NoiseParams& noise,
                                   const ProtocolParams& proto,
                                   const heralding::ChannelParams& channel) {
  noise.validate();
  proto.validate();
  if (d_km < 0.0) throw std::invalid_argument("d_km must be >= 0");
  const double eta_t =
      std::pow(10.0, -channel.fiber_loss_db_per_km * d_km / 10.0);

  BaselineReport out;
  if (model == BaselineModel::spdc) {
    // Un-heralded distribution: channel loss degrades the Bell test itself.
    quantum::NoiseParams effective = noise;
    effective.local_efficiency = noise.local_efficiency * eta_t;
    ProtocolParams pp = proto;
    pp.strategy = quantum::Strategy::base;
    const double r_inf = std::max(0.0, r_infinity_raw(effective, pp));
    constexpr double kGhzGenerationProb = 1e-8;
    out.e_c = (1.0 - proto.test_basis_prob) * channel.rep_rate_hz *
              kGhzGenerationProb * r_inf;
    out.note =
        "approximate baseline: cascaded-SPDC GHZ source at 1e-8 per pulse, "
        "transmission loss folded into the Bell test (eta_l * eta_t)";
  } else {
    // Heralded single-photon scheme without memories: high channel purity
    // demands a near-zero transmittance, and every pulse is consumed.
    constexpr double kLowTransmittance = 1e-3;
    const double p_s = 2.0 * eta_t * kLowTransmittance * (1.0 - kLowTransmittance);
    ProtocolParams pp = proto;
    pp.strategy = quantum::Strategy::base;
    const double r_inf = std::max(0.0, r_infinity_raw(noise, pp));
    out.e_c = (1.0 - proto.test_basis_prob) * proto.gsm_success_prob *
              channel.rep_rate_hz * p_s * p_s * p_s * r_inf;
    out.note =
        "approximate baseline: heralded single-photon scheme without "
        "memories, E_m = P_s^3 at T = 1e-3";
  }
  return out;
}

}  // namespace diqss::keyrate
