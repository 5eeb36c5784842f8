#pragma once

#include <optional>

namespace diqss::heralding {

/// Physical-layer parameters of the heralded loading stage.
struct ChannelParams {
  double transmittance = 0.5;         // T of the variable beam splitter
  double distance_km = 0.0;           // d, per-user photon transmission distance
  double fiber_loss_db_per_km = 0.2;  // alpha
  double memory_efficiency = 1.0;     // eta_M, per photon per storage interval
  int max_storage_intervals = 0;      // N
  double rep_rate_hz = 1e7;           // R_rep

  /// When set, eta_t is taken verbatim instead of 10^(-alpha d / 10).
  std::optional<double> eta_t_override;

  double eta_t() const;
  bool eta_t_overridden() const { return eta_t_override.has_value(); }

  void validate() const;
};

}  // namespace diqss::heralding
