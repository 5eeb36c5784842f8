#include "diqss/quantum/state.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace diqss::quantum {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > 6) {
    throw std::invalid_argument("num_qubits must be in [1,6], got " + std::to_string(n));
  }
}

double norm_squared(const std::vector<Complex>& amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

}  // namespace

PureState::PureState(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(num_qubits_);
  const auto dim = static_cast<size_t>(1) << num_qubits_;
  if (amplitudes_.size() != dim) {
    throw std::invalid_argument("amplitude vector length must be 2^num_qubits");
  }
  if (std::abs(norm_squared(amplitudes_) - 1.0) > kLinAlgTol) {
    throw std::invalid_argument("state is not normalized");
  }
}

PureState PureState::normalized(int num_qubits, std::vector<Complex> amplitudes) {
  const double n2 = norm_squared(amplitudes);
  if (n2 <= 0.0) {
    throw std::invalid_argument("cannot normalize a zero state vector");
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amplitudes) a *= inv;
  return PureState(num_qubits, std::move(amplitudes));
}

Complex PureState::inner(const PureState& other) const {
  if (other.num_qubits_ != num_qubits_) {
    throw std::invalid_argument("qubit count mismatch in inner product");
  }
  Complex acc{0.0, 0.0};
  for (size_t i = 0; i < amplitudes_.size(); ++i) {
    acc += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  }
  return acc;
}

double PureState::fidelity(const PureState& other) const {
  return std::norm(inner(other));
}

DensityOperator::DensityOperator(int num_qubits, std::vector<Complex> matrix)
    : num_qubits_(num_qubits), dim_(1 << num_qubits), matrix_(std::move(matrix)) {
  check_qubit_count(num_qubits_);
  if (matrix_.size() != static_cast<size_t>(dim_) * dim_) {
    throw std::invalid_argument("density matrix must be 2^n x 2^n");
  }
  Complex tr{0.0, 0.0};
  for (int r = 0; r < dim_; ++r) {
    tr += at(r, r);
    for (int c = r; c < dim_; ++c) {
      if (std::abs(at(r, c) - std::conj(at(c, r))) > kLinAlgTol) {
        throw std::invalid_argument("density matrix is not Hermitian");
      }
    }
  }
  if (std::abs(tr - Complex{1.0, 0.0}) > kLinAlgTol) {
    throw std::invalid_argument("density matrix trace must be 1");
  }
  for (double ev : eigenvalues()) {
    if (ev < -kPositivityTol) {
      throw std::invalid_argument("density matrix has a negative eigenvalue: " +
                                  std::to_string(ev));
    }
  }
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  const int dim = psi.dim();
  std::vector<Complex> m(static_cast<size_t>(dim) * dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      m[static_cast<size_t>(r) * dim + c] =
          psi.amplitude(r) * std::conj(psi.amplitude(c));
    }
  }
  return DensityOperator(psi.num_qubits(), std::move(m));
}

std::vector<double> DensityOperator::eigenvalues() const {
  Eigen::MatrixXcd m(dim_, dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) m(r, c) = at(r, c);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  const auto& evs = solver.eigenvalues();
  return std::vector<double>(evs.data(), evs.data() + dim_);
}

std::array<GhzLabel, 8> all_ghz_labels() {
  return {GhzLabel{1, +1}, GhzLabel{1, -1}, GhzLabel{2, +1}, GhzLabel{2, -1},
          GhzLabel{3, +1}, GhzLabel{3, -1}, GhzLabel{4, +1}, GhzLabel{4, -1}};
}

void validate_ghz_label(const GhzLabel& label) {
  if (label.index < 1 || label.index > 4 || (label.sign != +1 && label.sign != -1)) {
    throw std::invalid_argument("invalid GHZ label");
  }
}

namespace {

constexpr Complex kI{0.0, 1.0};

Observable make_observable(ObservableName name) {
  const std::array<Complex, 4> sx = {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}};
  const std::array<Complex, 4> sy = {Complex{0, 0}, -kI, kI, Complex{0, 0}};
  const double r = 1.0 / std::sqrt(2.0);
  switch (name) {
    case ObservableName::A1:
    case ObservableName::C1:
    case ObservableName::B1:
      return {name, sx};
    case ObservableName::A2:
      return {name, sy};
    case ObservableName::C2:
      return {name, {Complex{0, 0}, kI, -kI, Complex{0, 0}}};  // -sigma_y
    case ObservableName::B2: {
      std::array<Complex, 4> m;
      for (int i = 0; i < 4; ++i) m[i] = (sx[i] - sy[i]) * r;
      return {name, m};
    }
    case ObservableName::B3: {
      std::array<Complex, 4> m;
      for (int i = 0; i < 4; ++i) m[i] = (sx[i] + sy[i]) * r;
      return {name, m};
    }
  }
  throw std::invalid_argument("unknown observable name");
}

}  // namespace

const Observable& Observable::named(ObservableName name) {
  static const std::array<Observable, 7> table = {
      make_observable(ObservableName::A1), make_observable(ObservableName::A2),
      make_observable(ObservableName::B1), make_observable(ObservableName::B2),
      make_observable(ObservableName::B3), make_observable(ObservableName::C1),
      make_observable(ObservableName::C2)};
  return table[static_cast<int>(name)];
}

void Observable::validate() const {
  // Hermitian
  if (std::abs(matrix[0].imag()) > kLinAlgTol || std::abs(matrix[3].imag()) > kLinAlgTol ||
      std::abs(matrix[1] - std::conj(matrix[2])) > kLinAlgTol) {
    throw std::invalid_argument("observable is not Hermitian");
  }
  // M^2 = I  <=>  eigenvalues are +/-1
  const Complex sq00 = matrix[0] * matrix[0] + matrix[1] * matrix[2];
  const Complex sq01 = matrix[0] * matrix[1] + matrix[1] * matrix[3];
  const Complex sq10 = matrix[2] * matrix[0] + matrix[3] * matrix[2];
  const Complex sq11 = matrix[2] * matrix[1] + matrix[3] * matrix[3];
  if (std::abs(sq00 - Complex{1, 0}) > kLinAlgTol || std::abs(sq01) > kLinAlgTol ||
      std::abs(sq10) > kLinAlgTol || std::abs(sq11 - Complex{1, 0}) > kLinAlgTol) {
    throw std::invalid_argument("observable is not +/-1 valued (M^2 != I)");
  }
}

void NoiseParams::validate() const {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw std::invalid_argument("fidelity must be in [0,1]");
  }
  if (!(local_efficiency >= 0.0 && local_efficiency <= 1.0)) {
    throw std::invalid_argument("local_efficiency must be in [0,1]");
  }
}

}  // namespace diqss::quantum
