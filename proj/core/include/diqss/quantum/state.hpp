#pragma once

#include <array>
#include <complex>
#include <vector>

namespace diqss::quantum {

using Complex = std::complex<double>;

// Basis convention used everywhere: qubit 0 is the most significant bit of
// the basis index, |H> = 0 and |V> = 1. A 3-qubit basis ket |xyz> therefore
// sits at index 4x + 2y + z.
inline constexpr double kLinAlgTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

/// Complex state vector of 1..6 polarization qubits.
class PureState {
 public:
  /// Validating constructor: amplitudes must already be normalized
  /// (unit norm within 1e-12).
  PureState(int num_qubits, std::vector<Complex> amplitudes);

  /// Rescales the amplitudes to unit norm. Zero vectors are rejected.
  static PureState normalized(int num_qubits, std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  Complex amplitude(int basis_index) const { return amplitudes_.at(basis_index); }

  /// <this|other>
  Complex inner(const PureState& other) const;
  /// |<this|other>|^2
  double fidelity(const PureState& other) const;

 private:
  int num_qubits_;
  std::vector<Complex> amplitudes_;
};

/// Hermitian, unit-trace, positive-semidefinite operator on 1..6 qubits.
class DensityOperator {
 public:
  /// Validating constructor: the row-major matrix must be Hermitian and
  /// unit-trace within 1e-12, with eigenvalues >= -1e-10.
  DensityOperator(int num_qubits, std::vector<Complex> matrix);

  static DensityOperator from_pure(const PureState& psi);

  int num_qubits() const { return num_qubits_; }
  int dim() const { return dim_; }
  const std::vector<Complex>& matrix() const { return matrix_; }
  Complex at(int row, int col) const { return matrix_[row * dim_ + col]; }

  /// Eigenvalues in ascending order.
  std::vector<double> eigenvalues() const;

 private:
  int num_qubits_;
  int dim_;
  std::vector<Complex> matrix_;
};

/// One of the eight three-qubit GHZ basis states: index in 1..4, sign +1/-1.
struct GhzLabel {
  int index = 1;
  int sign = +1;

  bool operator==(const GhzLabel&) const = default;
};

/// All eight labels in a fixed order: (1,+),(1,-),(2,+),...,(4,-).
std::array<GhzLabel, 8> all_ghz_labels();

void validate_ghz_label(const GhzLabel& label);

enum class ObservableName { A1, A2, B1, B2, B3, C1, C2 };

/// Single-qubit +/-1-valued measurement (2x2 Hermitian with M^2 = I).
struct Observable {
  ObservableName name;
  std::array<Complex, 4> matrix;  // row-major 2x2

  /// Protocol basis table: A1 = C1 = sigma_x, A2 = -C2 = sigma_y,
  /// B1 = sigma_x, B2 = (sigma_x - sigma_y)/sqrt2, B3 = (sigma_x + sigma_y)/sqrt2.
  static const Observable& named(ObservableName name);

  void validate() const;  // Hermitian and M^2 = I within 1e-12
};

struct NoiseParams {
  double fidelity = 1.0;          // F, weight of the ideal GHZ component
  double local_efficiency = 1.0;  // eta_l

  void validate() const;
};

}  // namespace diqss::quantum
