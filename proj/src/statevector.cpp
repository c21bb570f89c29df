#include "nhq/statevector.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

namespace nhq {

namespace {

void check_qubits(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxStateQubits) {
    throw Error(ErrorCode::TooLarge, "statevector width must be in [1, 26], got " + std::to_string(n_qubits));
  }
}

void check_index(const StateVector& s, int q) {
  if (q < 0 || q >= s.n_qubits()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "qubit " + std::to_string(q) + " outside " + std::to_string(s.n_qubits()) + "-qubit register");
  }
}

void check_same(const Amplitudes& a, const Amplitudes& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "state dimensions differ");
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  check_qubits(n_qubits);
  amps_ = Amplitudes::Zero(Eigen::Index{1} << n_qubits);
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, Amplitudes amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {
  check_qubits(n_qubits);
  if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
    throw Error(ErrorCode::DimensionMismatch, "amplitude count must be 2^n_qubits");
  }
}

StateVector StateVector::plus(int n_qubits) {
  check_qubits(n_qubits);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return StateVector(n_qubits, Amplitudes::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= static_cast<std::uint64_t>(s.dim())) throw Error(ErrorCode::IndexOutOfRange, "basis index");
  s.amps_[0] = 0.0;
  s.amps_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

void StateVector::normalize() {
  const double n = norm();
  if (!(n > kMinNorm) || !std::isfinite(n)) throw Error(ErrorCode::ZeroNorm, "cannot normalize state of norm " + std::to_string(n));
  amps_ /= n;
}

StateVector StateVector::normalized() const {
  StateVector s = *this;
  s.normalize();
  return s;
}

// ---------------------------------------------------------------------------

void apply_single_qubit(StateVector& state, int qubit, const Eigen::Matrix2cd& u) {
  check_index(state, qubit);
  auto& a = state.amplitudes();
  const Eigen::Index stride = Eigen::Index{1} << qubit;
  const Eigen::Index dim = a.size();
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index i = base; i < base + stride; ++i) {
      const cplx a0 = a[i];
      const cplx a1 = a[i + stride];
      a[i] = u(0, 0) * a0 + u(0, 1) * a1;
      a[i + stride] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

void apply_pauli(const PauliString& p, const Amplitudes& in, Amplitudes& out) {
  const auto dim = static_cast<std::uint64_t>(in.size());
  if (p.n_qubits() > 63 || (std::uint64_t{1} << p.n_qubits()) != dim) {
    throw Error(ErrorCode::DimensionMismatch, "Pauli string width does not match state");
  }
  out.resize(in.size());
  const auto x = p.x_mask();
  for (std::uint64_t b = 0; b < dim; ++b) out[static_cast<Eigen::Index>(b ^ x)] = p.phase(b) * in[static_cast<Eigen::Index>(b)];
}

cplx pauli_matrix_element(const PauliString& p, const Amplitudes& a, const Amplitudes& b) {
  check_same(a, b);
  const auto dim = static_cast<std::uint64_t>(b.size());
  if (p.n_qubits() > 63 || (std::uint64_t{1} << p.n_qubits()) != dim) {
    throw Error(ErrorCode::DimensionMismatch, "Pauli string width does not match state");
  }
  const auto x = p.x_mask();
  cplx acc = 0.0;
  for (std::uint64_t k = 0; k < dim; ++k) {
    acc += std::conj(a[static_cast<Eigen::Index>(k ^ x)]) * p.phase(k) * b[static_cast<Eigen::Index>(k)];
  }
  return acc;
}

namespace {

double checked_norm2(const StateVector& s) {
  const double n2 = s.squared_norm();
  if (!(n2 > kMinNorm * kMinNorm)) throw Error(ErrorCode::ZeroNorm, "expectation of a zero-norm state");
  return n2;
}

}  // namespace

double pauli_expectation(const PauliString& p, const StateVector& state) {
  const double n2 = checked_norm2(state);
  return pauli_matrix_element(p, state.amplitudes(), state.amplitudes()).real() / n2;
}

double expectation(const Hamiltonian& h, const StateVector& state) {
  const double n2 = checked_norm2(state);
  double acc = 0.0;
  for (const auto& t : h.terms()) acc += t.coeff * pauli_matrix_element(t.string, state.amplitudes(), state.amplitudes()).real();
  return acc / n2 + h.identity_offset();
}

double expectation(const PauliSumOperator& h, const StateVector& state) {
  const double n2 = checked_norm2(state);
  return h.matrix_element(state.amplitudes(), state.amplitudes()).real() / n2;
}

void apply_gate(StateVector& state, const Gate& g) {
  using std::cos;
  using std::sin;
  const double half = 0.5 * g.angle;
  const cplx i{0.0, 1.0};
  switch (g.kind) {
    case Gate::Kind::H: {
      const double r = std::numbers::sqrt2 / 2.0;
      Eigen::Matrix2cd u;
      u << r, r, r, -r;
      apply_single_qubit(state, g.target, u);
      return;
    }
    case Gate::Kind::Rx: {
      Eigen::Matrix2cd u;
      u << cos(half), -i * sin(half), -i * sin(half), cos(half);
      apply_single_qubit(state, g.target, u);
      return;
    }
    case Gate::Kind::Ry: {
      Eigen::Matrix2cd u;
      u << cos(half), -sin(half), sin(half), cos(half);
      apply_single_qubit(state, g.target, u);
      return;
    }
    case Gate::Kind::Rz: {
      Eigen::Matrix2cd u;
      u << std::exp(-i * half), 0.0, 0.0, std::exp(i * half);
      apply_single_qubit(state, g.target, u);
      return;
    }
    case Gate::Kind::CNOT: {
      check_index(state, g.control);
      check_index(state, g.target);
      if (g.control == g.target) throw Error(ErrorCode::InvalidArgument, "CNOT control equals target");
      auto& a = state.amplitudes();
      const std::uint64_t cbit = std::uint64_t{1} << g.control;
      const std::uint64_t tbit = std::uint64_t{1} << g.target;
      for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(a.size()); ++b) {
        if ((b & cbit) && !(b & tbit)) std::swap(a[static_cast<Eigen::Index>(b)], a[static_cast<Eigen::Index>(b | tbit)]);
      }
      return;
    }
    case Gate::Kind::PauliRotation: {
      if (g.pauli.n_qubits() != state.n_qubits()) throw Error(ErrorCode::DimensionMismatch, "rotation string width");
      // exp(-i theta P/2) = cos(theta/2) - i sin(theta/2) P
      Amplitudes pa;
      apply_pauli(g.pauli, state.amplitudes(), pa);
      state.amplitudes() = cos(half) * state.amplitudes() - i * sin(half) * pa;
      return;
    }
  }
}

void apply_gates(StateVector& state, const std::vector<Gate>& gates) {
  for (const auto& g : gates) apply_gate(state, g);
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxSeriesTerms = 200;
constexpr double kSeriesTol = 1e-13;

}  // namespace

CosSin apply_cos_sin(const Hamiltonian& h, double dt, const StateVector& state) {
  return apply_cos_sin(PauliSumOperator(h), dt, state);
}

CosSin apply_cos_sin(const PauliSumOperator& h, double dt, const StateVector& state) {
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, "dt must be finite and >= 0");
  if (static_cast<std::size_t>(state.dim()) != h.dim()) throw Error(ErrorCode::DimensionMismatch, "operator vs state");
  const double x = h.traceless_l1() * dt;
  if (x > std::numbers::pi * (1.0 + 1e-12)) {
    throw Error(ErrorCode::SeriesRegime, "sum|alpha| dt = " + std::to_string(x) + " exceeds pi");
  }

  const Amplitudes& psi = state.amplitudes();
  const double scale = psi.norm();
  Amplitudes cos_acc = psi;
  Amplitudes sin_acc = Amplitudes::Zero(psi.size());
  Amplitudes term = psi;
  Amplitudes next;
  // Past j >= x the term bound x^j / j! decreases monotonically.
  const int hump = static_cast<int>(std::ceil(x));
  bool converged = scale == 0.0 || dt == 0.0;
  for (int j = 1; j <= kMaxSeriesTerms && !converged; ++j) {
    h.apply_traceless(term, next);
    next *= dt / j;
    std::swap(term, next);
    // (-1)^{floor(j/2)} picks the sign of the even (cos) or odd (sin) series.
    const double sign = ((j / 2) % 2 == 0) ? 1.0 : -1.0;
    if (j % 2 == 0) {
      cos_acc += sign * term;
    } else {
      sin_acc += sign * term;
    }
    if (j >= hump && term.norm() < kSeriesTol * scale) converged = true;
  }
  if (!converged) throw Error(ErrorCode::NonConvergence, "cos/sin series did not converge in 200 terms");

  const double c = h.identity_offset() * dt;
  if (c != 0.0) {
    // cos((A + c)dt) = cos(A dt)cos(c dt) - sin(A dt)sin(c dt), and likewise for sin.
    const double cc = std::cos(c), sc = std::sin(c);
    Amplitudes new_cos = cc * cos_acc - sc * sin_acc;
    sin_acc = cc * sin_acc + sc * cos_acc;
    cos_acc = std::move(new_cos);
  }
  return {StateVector(state.n_qubits(), std::move(cos_acc)), StateVector(state.n_qubits(), std::move(sin_acc))};
}

StateVector evolve(const PauliSumOperator& h, double t, const StateVector& state) {
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "evolution time must be finite");
  if (static_cast<std::size_t>(state.dim()) != h.dim()) throw Error(ErrorCode::DimensionMismatch, "operator vs state");
  const double total = h.traceless_l1() * std::abs(t);
  const int substeps = std::max(1, static_cast<int>(std::ceil(total)));
  const double tau = t / substeps;
  const cplx minus_i{0.0, -1.0};
  Amplitudes psi = state.amplitudes();
  Amplitudes term, next;
  const double scale = psi.norm();
  for (int s = 0; s < substeps; ++s) {
    Amplitudes acc = psi;
    term = psi;
    bool converged = scale == 0.0 || tau == 0.0;
    for (int j = 1; j <= kMaxSeriesTerms && !converged; ++j) {
      h.apply_traceless(term, next);
      term = (minus_i * tau / static_cast<double>(j)) * next;
      acc += term;
      if (term.norm() < kSeriesTol * scale) converged = true;
    }
    if (!converged) throw Error(ErrorCode::NonConvergence, "exponential series did not converge");
    psi = std::move(acc);
  }
  psi *= std::exp(minus_i * h.identity_offset() * t);
  return StateVector(state.n_qubits(), std::move(psi));
}

Projection project_qubit(const StateVector& state, int qubit, int outcome) {
  check_index(state, qubit);
  if (outcome != 0 && outcome != 1) throw Error(ErrorCode::InvalidArgument, "outcome must be 0 or 1");
  StateVector out = state;
  auto& a = out.amplitudes();
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(a.size()); ++b) {
    if (((b & bit) != 0) != (outcome == 1)) a[static_cast<Eigen::Index>(b)] = 0.0;
  }
  const double p = out.squared_norm() / state.squared_norm();
  return {std::move(out), p, p <= kMinNorm * kMinNorm};
}

cplx overlap(const StateVector& a, const StateVector& b) {
  check_same(a.amplitudes(), b.amplitudes());
  return a.amplitudes().dot(b.amplitudes());
}

double subspace_fidelity(const StateVector& state, const Eigen::MatrixXcd& columns) {
  if (columns.rows() != state.dim()) throw Error(ErrorCode::DimensionMismatch, "subspace basis vs state");
  const double n2 = checked_norm2(state);
  return (columns.adjoint() * state.amplitudes()).squaredNorm() / n2;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<char, 5> kMagic{'C', 'S', 'K', 'V', '1'};

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) throw Error(ErrorCode::IoError, "truncated amplitude dump");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_amplitudes(std::ostream& out, const StateVector& state) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(state.n_qubits()));
  for (Eigen::Index k = 0; k < state.dim(); ++k) {
    put_le<double>(out, state[k].real());
    put_le<double>(out, state[k].imag());
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing amplitude dump");
}

StateVector read_amplitudes(std::istream& in) {
  std::array<char, 5> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw Error(ErrorCode::IoError, "bad amplitude dump magic");
  const auto n = get_le<std::uint32_t>(in);
  if (n < 1 || n > static_cast<std::uint32_t>(kMaxStateQubits)) throw Error(ErrorCode::TooLarge, "amplitude dump width");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Amplitudes a(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    a[k] = {re, im};
  }
  return StateVector(static_cast<int>(n), std::move(a));
}

}  // namespace nhq
