#pragma once

#include <vector>

#include "diqss/heralding/channel.hpp"

namespace diqss::heralding {

/// Per-user two-photon separation probability P_s = 2 eta_t T (1 - T).
double p_success(const ChannelParams& params);

/// Probability that all six memories are fully loaded at pulse n+1, evaluated
/// as the literal double sum over the two waiting users' latest-success
/// pulses, each summand P_s^3 (1-P_s)^n rho^(2n-l-m) with
/// rho = eta_M^2 (1-P_s).
double p_loaded_oracle(int n, double p_s, double eta_m);

/// Closed form of the fully-loaded probability,
///   P(n+1) = P_s^3 (1-P_s)^n [1 + rho (1 + rho + ... + rho^(n-1))]^2,
/// where the bracket is the summed form of the printed geometric-ratio
/// quotient. The summed form stays finite-precision-stable through the
/// degenerate ratio rho = 1, where the bracket becomes n+1.
double p_loaded(int n, double p_s, double eta_m);

struct LoadingStats {
  double p_s = 0.0;                  // separation probability
  std::vector<double> per_interval;  // P(n+1) for n = 0..N
  double p_total = 0.0;              // P_t(N+1)
  double pulse_cost_partial = 0.0;   // P_w(Sigma N), early completions
  double pulse_cost_final = 0.0;     // P_w(N+1), window exhausted
  double pulse_cost = 0.0;           // P_w
  double efficiency = 0.0;           // E_m = P_t(N+1) / P_w
};

/// Full loading chain: per-interval probabilities, total probability,
/// pulse-consumption accounting and the fully-loaded efficiency E_m.
LoadingStats loading_stats(const ChannelParams& params);

struct TransmittanceOptimum {
  double transmittance = 0.0;
  double efficiency = 0.0;
  bool flat_objective = false;
};

/// Scans T over (0,1) at grid_step, then golden-section refines to 1e-6.
TransmittanceOptimum optimize_transmittance(const ChannelParams& params,
                                            double grid_step);

}  // namespace diqss::heralding
