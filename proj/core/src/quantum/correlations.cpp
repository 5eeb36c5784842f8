#include "diqss/quantum/correlations.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace diqss::quantum {

double correlation(const DensityOperator& rho, const Observable& a,
                   const Observable& b, const Observable& c, double eta_l) {
  if (rho.num_qubits() != 3) {
    throw std::invalid_argument("correlation expects a 3-qubit state");
  }
  if (!(eta_l >= 0.0 && eta_l <= 1.0)) {
    throw std::invalid_argument("eta_l must be in [0,1]");
  }
  a.validate();
  b.validate();
  c.validate();

  // Tr[rho (a (x) b (x) c)] = sum_{rc} rho_{rc} M_{cr}
  Complex tr{0.0, 0.0};
  for (int r = 0; r < 8; ++r) {
    const int ra = (r >> 2) & 1, rb = (r >> 1) & 1, rc = r & 1;
    for (int col = 0; col < 8; ++col) {
      const int ca = (col >> 2) & 1, cb = (col >> 1) & 1, cc = col & 1;
      const Complex m =
          a.matrix[ca * 2 + ra] * b.matrix[cb * 2 + rb] * c.matrix[cc * 2 + rc];
      tr += rho.at(r, col) * m;
    }
  }
  const double e = tr.real();
  return eta_l * eta_l * eta_l * e;
}

namespace {

using N = ObservableName;

constexpr std::array<CorrelatorTerm, 4> kChshTerms = {{
    {N::A1, N::B2, N::C1, +1},
    {N::A1, N::B3, N::C1, +1},
    {N::A2, N::B2, N::C1, +1},
    {N::A2, N::B3, N::C1, -1},
}};

// Svetlichny operator written as CHSH (x) C1 + dual-CHSH (x) C2.
constexpr std::array<CorrelatorTerm, 8> kSvetlichnyTerms = {{
    {N::A1, N::B2, N::C1, +1},
    {N::A1, N::B3, N::C1, +1},
    {N::A2, N::B2, N::C1, +1},
    {N::A2, N::B3, N::C1, -1},
    {N::A1, N::B2, N::C2, -1},
    {N::A1, N::B3, N::C2, +1},
    {N::A2, N::B2, N::C2, +1},
    {N::A2, N::B3, N::C2, +1},
}};

double evaluate_terms(std::span<const CorrelatorTerm> terms,
                      const DensityOperator& rho, double eta_l) {
  double acc = 0.0;
  for (const auto& t : terms) {
    acc += t.sign * correlation(rho, Observable::named(t.a), Observable::named(t.b),
                                Observable::named(t.c), eta_l);
  }
  return acc;
}

}  // namespace

std::span<const CorrelatorTerm> chsh_terms() { return kChshTerms; }
std::span<const CorrelatorTerm> svetlichny_terms() { return kSvetlichnyTerms; }

double chsh_value(const DensityOperator& rho, double eta_l) {
  return evaluate_terms(kChshTerms, rho, eta_l);
}

double svetlichny_value(const DensityOperator& rho, double eta_l) {
  return evaluate_terms(kSvetlichnyTerms, rho, eta_l);
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::base: return "base";
    case Strategy::postselect: return "postselect";
    case Strategy::advanced: return "advanced";
  }
  return "?";
}

double qber(const NoiseParams& noise, Strategy strategy, std::optional<double> q) {
  noise.validate();
  if (strategy != Strategy::advanced && q.has_value()) {
    throw std::invalid_argument("q is only meaningful for the advanced strategy");
  }
  const double F = noise.fidelity;
  const double eta3 = std::pow(noise.local_efficiency, 3);
  switch (strategy) {
    case Strategy::base:
      return 0.5 * (1.0 - F) * eta3 + (1.0 - eta3);
    case Strategy::postselect:
      return 0.5 * (1.0 - F) * eta3 + 0.5 * (1.0 - eta3);
    case Strategy::advanced: {
      if (!q.has_value()) {
        throw std::invalid_argument("advanced strategy requires q");
      }
      if (!(*q >= 0.0 && *q <= 1.0)) {
        throw std::invalid_argument("q must be in [0,1]");
      }
      const double dp = 0.5 * (1.0 - F) * eta3 + 0.5 * (1.0 - eta3);
      return *q + (1.0 - 2.0 * *q) * dp;
    }
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace diqss::quantum
