#include "diqss/quantum/ghz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diqss::quantum {

namespace {

// Basis-index pairs of the GHZ family, qubit 0 most significant:
// index 1: |HHH>,|VVV>; 2: |HHV>,|VVH>; 3: |HVH>,|VHV>; 4: |HVV>,|VHH>.
constexpr int kGhzKets[5][2] = {{0, 0}, {0b000, 0b111}, {0b001, 0b110},
                                {0b010, 0b101}, {0b011, 0b100}};

}  // namespace

PureState ghz_state(const GhzLabel& label) {
  validate_ghz_label(label);
  std::vector<Complex> amps(8, Complex{0.0, 0.0});
  const double r = 1.0 / std::sqrt(2.0);
  amps[kGhzKets[label.index][0]] = Complex{r, 0.0};
  amps[kGhzKets[label.index][1]] = Complex{label.sign * r, 0.0};
  return PureState(3, std::move(amps));
}

double separation_probability_oracle(double transmittance, double eta_t) {
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("transmittance must be in [0,1]");
  }
  if (!(eta_t >= 0.0 && eta_t <= 1.0)) {
    throw std::invalid_argument("eta_t must be in [0,1]");
  }
  // Enumerate the four path configurations of the two photons (H and V):
  // each is transmitted with probability T or reflected with 1-T. A split
  // event (exactly one transmitted) succeeds if the transmitted photon
  // survives the channel.
  double success = 0.0;
  for (int h_transmitted = 0; h_transmitted < 2; ++h_transmitted) {
    for (int v_transmitted = 0; v_transmitted < 2; ++v_transmitted) {
      const double ph = h_transmitted ? transmittance : 1.0 - transmittance;
      const double pv = v_transmitted ? transmittance : 1.0 - transmittance;
      if (h_transmitted + v_transmitted == 1) {
        success += ph * pv * eta_t;
      }
    }
  }
  return success;
}

PureState loaded_pairs_state() {
  std::vector<Complex> amps(64, Complex{0.0, 0.0});
  const double w = 1.0 / std::sqrt(8.0);
  for (int idx = 0; idx < 64; ++idx) {
    bool pairwise_flipped = true;
    for (int u = 0; u < 3; ++u) {
      const int retained = (idx >> (5 - u)) & 1;
      const int measured = (idx >> (5 - (u + 3))) & 1;
      if (retained == measured) {
        pairwise_flipped = false;
        break;
      }
    }
    if (pairwise_flipped) amps[idx] = Complex{w, 0.0};
  }
  return PureState(6, std::move(amps));
}

std::vector<SwapOutcome> entanglement_swap(const PureState& input,
                                           const std::array<int, 3>& measured_positions) {
  if (input.num_qubits() != 6) {
    throw std::invalid_argument("entanglement_swap expects a 6-qubit state");
  }
  for (int p : measured_positions) {
    if (p < 0 || p > 5) throw std::invalid_argument("measured position out of range");
  }
  if (measured_positions[0] == measured_positions[1] ||
      measured_positions[0] == measured_positions[2] ||
      measured_positions[1] == measured_positions[2]) {
    throw std::invalid_argument("measured positions must be distinct");
  }

  std::array<int, 3> retained_positions{};
  int k = 0;
  for (int p = 0; p < 6; ++p) {
    if (std::find(measured_positions.begin(), measured_positions.end(), p) ==
        measured_positions.end()) {
      retained_positions[k++] = p;
    }
  }

  std::vector<SwapOutcome> outcomes;
  outcomes.reserve(8);
  for (const GhzLabel& label : all_ghz_labels()) {
    const PureState g = ghz_state(label);
    std::vector<Complex> retained(8, Complex{0.0, 0.0});
    for (int full = 0; full < 64; ++full) {
      int ridx = 0;
      int midx = 0;
      for (int j = 0; j < 3; ++j) {
        ridx = (ridx << 1) | ((full >> (5 - retained_positions[j])) & 1);
        midx = (midx << 1) | ((full >> (5 - measured_positions[j])) & 1);
      }
      retained[ridx] += std::conj(g.amplitude(midx)) * input.amplitude(full);
    }
    double prob = 0.0;
    for (const auto& a : retained) prob += std::norm(a);
    if (prob > 0.0) {
      const double inv = 1.0 / std::sqrt(prob);
      for (auto& a : retained) a *= inv;
      outcomes.push_back(SwapOutcome{label, prob, PureState(3, std::move(retained))});
    }
  }
  return outcomes;
}

GsmResult gsm_classify(const GhzLabel& label) {
  validate_ghz_label(label);
  return label.index == 1 ? GsmResult::success : GsmResult::failure;
}

DensityOperator white_noise_state(double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw std::invalid_argument("fidelity must be in [0,1]");
  }
  std::vector<Complex> m(64, Complex{0.0, 0.0});
  // The eight GHZ projectors resolve the identity, so the noise term is
  // (1-F)/8 * I plus nothing off-diagonal beyond the target projector.
  const double w = (1.0 - fidelity) / 8.0;
  for (const GhzLabel& label : all_ghz_labels()) {
    const PureState g = ghz_state(label);
    const double weight = w + (label.index == 1 && label.sign == +1 ? fidelity : 0.0);
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        m[static_cast<size_t>(r) * 8 + c] +=
            weight * g.amplitude(r) * std::conj(g.amplitude(c));
      }
    }
  }
  return DensityOperator(3, std::move(m));
}

}  // namespace diqss::quantum
