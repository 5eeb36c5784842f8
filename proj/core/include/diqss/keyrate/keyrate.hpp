#pragma once

#include <optional>
#include <string>

#include "diqss/heralding/channel.hpp"
#include "diqss/heralding/loading.hpp"
#include "diqss/keyrate/entropy.hpp"
#include "diqss/keyrate/eve_solver.hpp"
#include "diqss/quantum/correlations.hpp"
#include "diqss/quantum/state.hpp"

namespace diqss::keyrate {

/// Sifting and strategy parameters.
struct ProtocolParams {
  double first_basis_prob = 0.5;     // p, Alice/Charlie first-basis probability
  double test_basis_prob = 0.5;      // P_c, Bob's test-basis probability
  double gsm_success_prob = 0.25;    // P_GHZ
  double noise_preprocessing = 0.0;  // q, dealer flip level (advanced only)
  quantum::Strategy strategy = quantum::Strategy::base;

  // Entropy-bound evaluation flags; defaults reflect the shipped calibration
  // (interpretation A, min sense). `diqss calibrate` regenerates the stamp.
  Interpretation interpretation = Interpretation::kCorrelator;
  Sense sense = Sense::min;
  int solver_resolution = 64;

  /// lambda = p^2 / (p^2 + (1-p)^2), derived, never stored.
  double lambda_weight() const;

  void validate() const;
};

struct RInfBase {
  double value = 0.0;     // p^2 [g(sqrt(S^2/4-1)) - h(delta)], raw
  bool below_chsh = false;  // S < 2: no certified secrecy term
};

/// Asymptotic key-rate lower bound for a single key basis.
/// For S < 2 the secrecy term is 0 and the result is flagged.
RInfBase r_infinity_base(double S, double delta, double p);

struct AdvancedDiagnostics {
  EveBound bound;
  double delta_ar = 0.0;
  double entropy_correlator = 0.0;  // interpretation-A value at E_tilde
  std::optional<double> entropy_literal_at_S;  // literal form fed S, when defined
  bool below_chsh = false;
};

struct RInfAdvanced {
  double value = 0.0;  // (p^2 + (1-p)^2) [g(E_tilde, q) - h(delta_ar)], raw
  AdvancedDiagnostics diagnostics;
};

/// Random-key-basis bound with noise preprocessing. For S < 2 the certified
/// correlator is 0 (the solver is not consulted) and the result is flagged.
RInfAdvanced r_infinity_advanced(double S, const quantum::NoiseParams& noise,
                                 const ProtocolParams& proto);

/// Raw asymptotic rate for any strategy (negative allowed); used by the
/// threshold solvers.
double r_infinity_raw(const quantum::NoiseParams& noise, const ProtocolParams& proto);

/// E_c = (1 - P_c) P_GHZ R_rep E_m R_inf, bits per second. All inputs must be
/// nonnegative; callers clamp a negative R_inf before calling.
double practical_efficiency(double e_m, double r_inf, const ProtocolParams& proto,
                            double rep_rate_hz);

struct KeyRateReport {
  double chsh = 0.0;            // S
  double svetlichny = 0.0;      // S_ABC
  double delta = 0.0;           // QBER under the configured strategy
  std::optional<double> e_tilde;
  double r_111 = 0.0;
  std::optional<double> r_212;
  double r_inf = 0.0;           // raw, may be negative
  double e_m = 0.0;
  double e_c = 0.0;             // clamped at 0
  bool r_inf_clamped = false;
  bool below_chsh = false;

  heralding::ChannelParams channel;
  quantum::NoiseParams noise;
  ProtocolParams proto;
};

/// Full chain for one parameter point. S and S_ABC come from the state-level
/// correlators of quantum-core; the bound itself uses the closed forms.
KeyRateReport evaluate_keyrate(const heralding::ChannelParams& channel,
                               const quantum::NoiseParams& noise,
                               const ProtocolParams& proto);

/// Bisection roots of the raw R_inf, tolerance 1e-6 in the variable.
/// Throws BracketError when the bracket has no sign change.
double threshold_fidelity(double eta_l, quantum::Strategy strategy,
                          const ProtocolParams& proto);
double threshold_local_efficiency(double fidelity, quantum::Strategy strategy,
                                  double q, const ProtocolParams& proto);

/// Distance at which E_c falls to target_ec (bisection, 0.01 km tolerance).
/// Throws BracketError when the target is unreachable at d = 0.
double secure_distance(const heralding::ChannelParams& channel,
                       const quantum::NoiseParams& noise,
                       const ProtocolParams& proto, double target_ec);

enum class BaselineModel { spdc, sps_no_qma };

struct BaselineReport {
  double e_c = 0.0;
  std::string note;  // always marked as an approximate baseline
};

/// Documented approximation models for the comparison curves:
///  - spdc: direct GHZ generation at 1e-8 per pulse, transmission loss folded
///    into the local efficiency (eta_l * eta_t enters the Bell test).
///  - sps_no_qma: heralded scheme without memories, E_m replaced by P_s^3 at
///    the near-zero transmittance T = 1e-3 it requires.
/// `channel` supplies fiber loss and repetition rate; its distance is ignored
/// in favor of d_km.
BaselineReport baseline_efficiency(BaselineModel model, double d_km,
                                   const quantum::NoiseParams& noise,
                                   const ProtocolParams& proto,
                                   const heralding::ChannelParams& channel);

}  // namespace diqss::keyrate
