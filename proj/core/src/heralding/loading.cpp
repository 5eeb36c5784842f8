#include "diqss/heralding/loading.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace diqss::heralding {

double ChannelParams::eta_t() const {
  if (eta_t_override) return *eta_t_override;
  return std::pow(10.0, -fiber_loss_db_per_km * distance_km / 10.0);
}

void ChannelParams::validate() const {
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("transmittance must be in [0,1]");
  }
  if (!(distance_km >= 0.0)) throw std::invalid_argument("distance_km must be >= 0");
  if (!(fiber_loss_db_per_km > 0.0)) {
    throw std::invalid_argument("fiber_loss_db_per_km must be > 0");
  }
  if (!(memory_efficiency >= 0.0 && memory_efficiency <= 1.0)) {
    throw std::invalid_argument("memory_efficiency must be in [0,1]");
  }
  if (max_storage_intervals < 0) {
    throw std::invalid_argument("max_storage_intervals must be >= 0");
  }
  if (!(rep_rate_hz > 0.0)) throw std::invalid_argument("rep_rate_hz must be > 0");
  if (eta_t_override && !(*eta_t_override >= 0.0 && *eta_t_override <= 1.0)) {
    throw std::invalid_argument("eta_t_override must be in [0,1]");
  }
}

double p_success(const ChannelParams& params) {
  params.validate();
  const double t = params.transmittance;
  return 2.0 * params.eta_t() * t * (1.0 - t);
}

namespace {

void check_loading_args(int n, double p_s, double eta_m) {
  if (n < 0) throw std::invalid_argument("n must be >= 0");
  if (!(p_s >= 0.0 && p_s <= 1.0)) throw std::invalid_argument("p_s must be in [0,1]");
  if (!(eta_m >= 0.0 && eta_m <= 1.0)) {
    throw std::invalid_argument("eta_m must be in [0,1]");
  }
}

}  // namespace

double p_loaded_oracle(int n, double p_s, double eta_m) {
  check_loading_args(n, p_s, eta_m);
  if (n == 0) return p_s * p_s * p_s;
  if (eta_m == 0.0) return 0.0;  // no stored photon survives a nonzero wait
  const double rho = eta_m * eta_m * (1.0 - p_s);
  const double common = p_s * p_s * p_s * std::pow(1.0 - p_s, n);
  double total = 0.0;
  for (int l = 0; l <= n; ++l) {
    for (int m = 0; m <= n; ++m) {
      total += common * std::pow(rho, 2 * n - l - m);
    }
  }
  return total;
}

double p_loaded(int n, double p_s, double eta_m) {
  check_loading_args(n, p_s, eta_m);
  if (n == 0) return p_s * p_s * p_s;
  if (eta_m == 0.0) return 0.0;
  const double rho = eta_m * eta_m * (1.0 - p_s);
  double geom = 0.0;  // 1 + rho + ... + rho^(n-1)
  double pk = 1.0;
  for (int k = 0; k < n; ++k) {
    geom += pk;
    pk *= rho;
  }
  const double bracket = 1.0 + rho * geom;
  return p_s * p_s * p_s * std::pow(1.0 - p_s, n) * bracket * bracket;
}

LoadingStats loading_stats(const ChannelParams& params) {
  params.validate();
  const int max_n = params.max_storage_intervals;
  LoadingStats stats;
  stats.p_s = p_success(params);
  stats.per_interval.resize(max_n + 1);
  for (int n = 0; n <= max_n; ++n) {
    stats.per_interval[n] = p_loaded(n, stats.p_s, params.memory_efficiency);
  }
  double p_total_before_last = 0.0;  // P_t(N)
  for (int n = 0; n < max_n; ++n) {
    p_total_before_last += stats.per_interval[n];
    stats.pulse_cost_partial += (n + 1) * stats.per_interval[n];
  }
  stats.p_total = p_total_before_last + stats.per_interval[max_n];
  stats.pulse_cost_final = (max_n + 1) * (1.0 - p_total_before_last);
  stats.pulse_cost = stats.pulse_cost_partial + stats.pulse_cost_final;
  stats.efficiency = stats.p_total / stats.pulse_cost;
  return stats;
}

TransmittanceOptimum optimize_transmittance(const ChannelParams& params,
                                            double grid_step) {
  params.validate();
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    throw std::invalid_argument("grid_step must be in (0, 0.1]");
  }

  auto efficiency_at = [&](double t) {
    ChannelParams p = params;
    p.transmittance = t;
    return loading_stats(p).efficiency;
  };

  TransmittanceOptimum best;
  double hi_t = 0.0;
  double lo_seen = 1e300;
  for (double t = grid_step; t < 1.0; t += grid_step) {
    const double e = efficiency_at(t);
    lo_seen = std::min(lo_seen, e);
    if (e > best.efficiency) {
      best.efficiency = e;
      hi_t = t;
    }
  }
  if (best.efficiency <= 0.0 || best.efficiency - lo_seen < 1e-300) {
    best.flat_objective = true;
    best.transmittance = hi_t > 0.0 ? hi_t : 0.5;
    return best;
  }

  double lo = std::max(grid_step / 2.0, hi_t - grid_step);
  double hi = std::min(1.0 - grid_step / 2.0, hi_t + grid_step);
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - golden * (hi - lo);
  double x2 = lo + golden * (hi - lo);
  double f1 = efficiency_at(x1);
  double f2 = efficiency_at(x2);
  while (hi - lo > 1e-6) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = efficiency_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = efficiency_at(x1);
    }
  }
  best.transmittance = 0.5 * (lo + hi);
  best.efficiency = efficiency_at(best.transmittance);
  return best;
}

}  // namespace diqss::heralding
