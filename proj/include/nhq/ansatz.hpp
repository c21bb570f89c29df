#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nhq/optimize.hpp"
#include "nhq/statevector.hpp"

namespace nhq {

enum class Axis { X, Y, Z };

/// Which qubits share a rotation angle within one axis of a layer.
enum class Sharing {
  PerQubit,   // n angles
  AllShared,  // 1 angle
  EvenOdd,    // 2 angles, by qubit parity
  Pairwise,   // ceil(n/2) angles, qubits 2k and 2k+1 together
};

/// Rotations applied qubit-wide, one sub-layer per axis in listed order.
struct RotationLayer {
  std::vector<Axis> axes;
  Sharing sharing = Sharing::PerQubit;
};

struct EntanglerLayer {
  bool ring = false;  // CNOT(q, q+1) chain, plus CNOT(n-1, 0) when ring
};

struct HadamardLayer {};

using Layer = std::variant<RotationLayer, EntanglerLayer, HadamardLayer>;

struct AnsatzSpec {
  int n_qubits = 0;
  std::vector<Layer> layers;

  int num_params() const;
  bool empty() const { return layers.empty(); }
  /// Throws LengthMismatch when params does not match num_params().
  std::vector<Gate> gates(const ParamVector& params) const;
};

int angles_per_axis(Sharing sharing, int n_qubits);

StateVector ansatz_apply(const AnsatzSpec& spec, const ParamVector& params, const StateVector& state);

/// Variational blocks for the hybrid driver:
///   tfim4  Rz.Rx, all qubits share          (2 parameters)
///   tfim8  Rz.Rx.Rz, all qubits share       (3)
///   sat5   Rz.Rx.Rz, per qubit              (3n)
///   sat8   Rz.Rx.Rz, pairwise shared        (3n/2)
AnsatzSpec ansatz_preset(std::string_view key, int n_qubits);
std::vector<std::string> ansatz_preset_keys();

/// Hadamards followed by `depth` rounds of per-qubit Ry.Rz and a CNOT chain.
/// Zero parameters prepare |+...+> from |0...0>.
AnsatzSpec recording_ansatz(int n_qubits, int depth = 3);

Sharing sharing_from_string(std::string_view s);
Axis axis_from_char(char c);

}  // namespace nhq

namespace nhq {

/// Gates of the adjoint circuit: reversed order, rotation angles negated.
std::vector<Gate> inverse_gates(const std::vector<Gate>& gates);

}  // namespace nhq
