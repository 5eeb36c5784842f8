#pragma once

#include <optional>
#include <span>

#include "diqss/quantum/state.hpp"

namespace diqss::quantum {

/// Loss-scaled three-party correlator eta_l^3 * Tr[rho (a (x) b (x) c)].
/// A photon lost at a station contributes 0 to the correlator, which scales
/// the ideal expectation by eta_l per photon.
double correlation(const DensityOperator& rho, const Observable& a,
                   const Observable& b, const Observable& c, double eta_l);

struct CorrelatorTerm {
  ObservableName a;
  ObservableName b;
  ObservableName c;
  int sign;
};

/// CHSH decomposition used for the security test: Charlie measures C1 and the
/// Bob-Charlie outcome product acts as Bob's effective outcome, so each term
/// is a three-party correlator conditioned on C1.
///   S = E(A1,B2,C1) + E(A1,B3,C1) + E(A2,B2,C1) - E(A2,B3,C1)
std::span<const CorrelatorTerm> chsh_terms();

/// Standard 8-term Svetlichny polynomial over the same bases. The C1 half is
/// the CHSH combination above; the C2 half is its dual, so S_ABC = 2 S holds
/// term-by-term on the white-noise family.
std::span<const CorrelatorTerm> svetlichny_terms();

/// Evaluates the CHSH combination; equals 2*sqrt(2)*F*eta_l^3 on
/// white_noise_state(F).
double chsh_value(const DensityOperator& rho, double eta_l);

/// Evaluates the 8-term Svetlichny polynomial; equals 2 * chsh_value here.
double svetlichny_value(const DensityOperator& rho, double eta_l);

enum class Strategy { base, postselect, advanced };

const char* to_string(Strategy s);

/// Closed-form QBER of the key generation rounds.
///   base:       (1-F)/2 eta^3 + 1 - eta^3     (non-click counted as error)
///   postselect: (1-F)/2 eta^3 + (1-eta^3)/2   (non-click randomized to +/-1)
///   advanced:   q + (1-2q) * postselect       (dealer flips with prob q)
/// q must be supplied exactly for the advanced strategy.
double qber(const NoiseParams& noise, Strategy strategy,
            std::optional<double> q = std::nullopt);

}  // namespace diqss::quantum
