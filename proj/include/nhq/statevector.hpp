#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "nhq/pauli.hpp"

namespace nhq {

inline constexpr int kMaxStateQubits = 26;

/// Dense amplitude vector over 2^n basis states, little-endian qubit order
/// (qubit q is bit q of the basis index).
///
/// The norm is not forced to one: filtered states carry their post-selection
/// weight in the norm. Functions that need a normalized input say so.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0>
  explicit StateVector(int n_qubits);
  StateVector(int n_qubits, Amplitudes amps);

  static StateVector zero(int n_qubits) { return StateVector(n_qubits); }
  /// H^{(x)n} |0...0>
  static StateVector plus(int n_qubits);
  static StateVector basis(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amps_.size(); }

  const Amplitudes& amplitudes() const { return amps_; }
  Amplitudes& amplitudes() { return amps_; }
  cplx operator[](Eigen::Index i) const { return amps_[i]; }
  cplx& operator[](Eigen::Index i) { return amps_[i]; }

  double squared_norm() const { return amps_.squaredNorm(); }
  double norm() const { return amps_.norm(); }

  /// Throws ZeroNorm when the norm is below 1e-14.
  void normalize();
  StateVector normalized() const;

 private:
  int n_qubits_ = 0;
  Amplitudes amps_;
};

inline constexpr double kMinNorm = 1e-14;

struct Gate {
  enum class Kind { H, Rx, Ry, Rz, CNOT, PauliRotation };

  Kind kind = Kind::H;
  int target = 0;
  int control = -1;
  double angle = 0.0;
  PauliString pauli;  // PauliRotation only

  static Gate h(int q) { return {Kind::H, q, -1, 0.0, {}}; }
  static Gate rx(int q, double theta) { return {Kind::Rx, q, -1, theta, {}}; }
  static Gate ry(int q, double theta) { return {Kind::Ry, q, -1, theta, {}}; }
  static Gate rz(int q, double theta) { return {Kind::Rz, q, -1, theta, {}}; }
  static Gate cnot(int control, int target) { return {Kind::CNOT, target, control, 0.0, {}}; }
  /// exp(-i theta P / 2)
  static Gate pauli_rotation(PauliString p, double theta) { return {Kind::PauliRotation, 0, -1, theta, std::move(p)}; }
};

void apply_gate(StateVector& state, const Gate& gate);
void apply_gates(StateVector& state, const std::vector<Gate>& gates);

/// Generic 2x2 unitary on one qubit.
void apply_single_qubit(StateVector& state, int qubit, const Eigen::Matrix2cd& u);

/// out = P |in>
void apply_pauli(const PauliString& p, const Amplitudes& in, Amplitudes& out);

/// <a| P |b>
cplx pauli_matrix_element(const PauliString& p, const Amplitudes& a, const Amplitudes& b);

/// <psi|P|psi> / <psi|psi>
double pauli_expectation(const PauliString& p, const StateVector& state);

/// <psi|H|psi> / <psi|psi>; works for unnormalized (filtered) states.
double expectation(const Hamiltonian& h, const StateVector& state);
double expectation(const PauliSumOperator& h, const StateVector& state);

struct CosSin {
  StateVector cos_part;
  StateVector sin_part;
};

/// cos(H dt)|psi> and sin(H dt)|psi> by even/odd Taylor series.
///
/// The identity offset c is split off and recombined with the angle-addition
/// formulas, so the series only sees the traceless part, whose Pauli l1 norm
/// times dt must not exceed pi (SeriesRegime otherwise). Terms are summed
/// until one drops below 1e-13 ||psi|| past the hump of the series; more than
/// 200 terms raises NonConvergence.
CosSin apply_cos_sin(const Hamiltonian& h, double dt, const StateVector& state);
CosSin apply_cos_sin(const PauliSumOperator& h, double dt, const StateVector& state);

/// exp(-i H t)|psi> by Taylor series on sub-steps with l1 * t_sub <= 1.
StateVector evolve(const PauliSumOperator& h, double t, const StateVector& state);

struct Projection {
  StateVector projected;  // unnormalized survivor
  double probability = 0.0;
  bool zero_probability = false;
};

/// Zero the amplitudes whose bit q differs from `outcome`. A vanishing
/// probability is flagged, not thrown.
Projection project_qubit(const StateVector& state, int qubit, int outcome);

/// <a|b>
cplx overlap(const StateVector& a, const StateVector& b);

/// Squared norm of the projection of the normalized state onto span(columns).
double subspace_fidelity(const StateVector& state, const Eigen::MatrixXcd& orthonormal_columns);

/// Binary amplitude dump: "CSKV1", u32 n_qubits, then 2^n (re, im) f64 pairs,
/// all little-endian.
void write_amplitudes(std::ostream& out, const StateVector& state);
StateVector read_amplitudes(std::istream& in);

}  // namespace nhq
