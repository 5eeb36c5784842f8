#pragma once

#include <array>
#include <vector>

#include "diqss/quantum/state.hpp"

namespace diqss::quantum {

/// The 3-qubit GHZ basis state for a label, e.g. (1,+) -> (|HHH> + |VVV>)/sqrt2.
PureState ghz_state(const GhzLabel& label);

/// Success probability that a user's two photons split into one local and one
/// transmitted arm, with the transmitted photon surviving the channel.
/// Enumerates the four beam-splitter path outcomes directly; equals
/// 2 * eta_t * T * (1 - T) exactly.
double separation_probability_oracle(double transmittance, double eta_t);

/// Product of three heralded photon pairs (|HV> + |VH>)/sqrt2, pair u spanning
/// qubits (u, u+3): retained photons on qubits 0..2, photons bound for the
/// GHZ-state measurement on qubits 3..5.
PureState loaded_pairs_state();

struct SwapOutcome {
  GhzLabel label;
  double probability;
  PureState retained;
};

/// Projects the three measured qubits of a 6-qubit state onto each GHZ basis
/// state and returns every outcome with probability > 0 together with the
/// normalized retained 3-qubit state. Labels are ordered as all_ghz_labels().
std::vector<SwapOutcome> entanglement_swap(const PureState& input,
                                           const std::array<int, 3>& measured_positions);

enum class GsmResult { success, failure };

/// Linear-optical GHZ-state measurement distinguishes only the two
/// |GHZ_1^+-> outcomes.
GsmResult gsm_classify(const GhzLabel& label);

/// rho = F |GHZ_1^+><GHZ_1^+| + (1-F)/8 * sum of all eight GHZ projectors.
DensityOperator white_noise_state(double fidelity);

}  // namespace diqss::quantum
