#include "nhq/ansatz.hpp"

namespace nhq {

int angles_per_axis(Sharing sharing, int n) {
  switch (sharing) {
    case Sharing::PerQubit: return n;
    case Sharing::AllShared: return 1;
    case Sharing::EvenOdd: return n > 1 ? 2 : 1;
    case Sharing::Pairwise: return (n + 1) / 2;
  }
  return 0;
}

namespace {

int angle_index(Sharing sharing, int q) {
  switch (sharing) {
    case Sharing::PerQubit: return q;
    case Sharing::AllShared: return 0;
    case Sharing::EvenOdd: return q % 2;
    case Sharing::Pairwise: return q / 2;
  }
  return 0;
}

Gate rotation(Axis a, int q, double theta) {
  switch (a) {
    case Axis::X: return Gate::rx(q, theta);
    case Axis::Y: return Gate::ry(q, theta);
    case Axis::Z: return Gate::rz(q, theta);
  }
  return Gate::rz(q, theta);
}

}  // namespace

int AnsatzSpec::num_params() const {
  int count = 0;
  for (const auto& layer : layers) {
    if (const auto* r = std::get_if<RotationLayer>(&layer)) {
      count += static_cast<int>(r->axes.size()) * angles_per_axis(r->sharing, n_qubits);
    }
  }
  return count;
}

std::vector<Gate> AnsatzSpec::gates(const ParamVector& params) const {
  if (params.size() != num_params()) {
    throw Error(ErrorCode::LengthMismatch, "ansatz expects " + std::to_string(num_params()) + " parameters, got " +
                                               std::to_string(params.size()));
  }
  std::vector<Gate> out;
  Eigen::Index offset = 0;
  for (const auto& layer : layers) {
    if (const auto* r = std::get_if<RotationLayer>(&layer)) {
      const int per_axis = angles_per_axis(r->sharing, n_qubits);
      for (Axis a : r->axes) {
        for (int q = 0; q < n_qubits; ++q) out.push_back(rotation(a, q, params[offset + angle_index(r->sharing, q)]));
        offset += per_axis;
      }
    } else if (const auto* e = std::get_if<EntanglerLayer>(&layer)) {
      for (int q = 0; q + 1 < n_qubits; ++q) out.push_back(Gate::cnot(q, q + 1));
      if (e->ring && n_qubits > 2) out.push_back(Gate::cnot(n_qubits - 1, 0));
    } else {
      for (int q = 0; q < n_qubits; ++q) out.push_back(Gate::h(q));
    }
  }
  return out;
}

StateVector ansatz_apply(const AnsatzSpec& spec, const ParamVector& params, const StateVector& state) {
  if (state.n_qubits() != spec.n_qubits) throw Error(ErrorCode::DimensionMismatch, "ansatz width vs state");
  StateVector out = state;
  apply_gates(out, spec.gates(params));
  return out;
}

AnsatzSpec ansatz_preset(std::string_view key, int n) {
  using enum Axis;
  if (key == "tfim4") return {n, {RotationLayer{{Z, X}, Sharing::AllShared}}};
  if (key == "tfim8") return {n, {RotationLayer{{Z, X, Z}, Sharing::AllShared}}};
  if (key == "sat5") return {n, {RotationLayer{{Z, X, Z}, Sharing::PerQubit}}};
  if (key == "sat8") return {n, {RotationLayer{{Z, X, Z}, Sharing::Pairwise}}};
  if (key == "none") return {n, {}};
  throw Error(ErrorCode::ConfigError, "unknown ansatz preset '" + std::string(key) + "'");
}

std::vector<std::string> ansatz_preset_keys() { return {"tfim4", "tfim8", "sat5", "sat8", "none"}; }

AnsatzSpec recording_ansatz(int n, int depth) {
  if (depth < 1) throw Error(ErrorCode::ConfigError, "recording ansatz depth must be >= 1");
  AnsatzSpec spec{n, {HadamardLayer{}}};
  for (int d = 0; d < depth; ++d) {
    spec.layers.push_back(RotationLayer{{Axis::Y, Axis::Z}, Sharing::PerQubit});
    if (n > 1) spec.layers.push_back(EntanglerLayer{false});
  }
  return spec;
}

Sharing sharing_from_string(std::string_view s) {
  if (s == "per_qubit") return Sharing::PerQubit;
  if (s == "all_shared") return Sharing::AllShared;
  if (s == "even_odd") return Sharing::EvenOdd;
  if (s == "pairwise") return Sharing::Pairwise;
  throw Error(ErrorCode::ConfigError, "unknown sharing '" + std::string(s) + "'");
}

Axis axis_from_char(char c) {
  switch (c) {
    case 'x': case 'X': return Axis::X;
    case 'y': case 'Y': return Axis::Y;
    case 'z': case 'Z': return Axis::Z;
    default: throw Error(ErrorCode::ConfigError, std::string("unknown rotation axis '") + c + "'");
  }
}

}  // namespace nhq

namespace nhq {

std::vector<Gate> inverse_gates(const std::vector<Gate>& gates) {
  std::vector<Gate> out(gates.rbegin(), gates.rend());
  for (auto& g : out) {
    if (g.kind != Gate::Kind::H && g.kind != Gate::Kind::CNOT) g.angle = -g.angle;
  }
  return out;
}

}  // namespace nhq
