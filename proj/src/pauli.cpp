#include "nhq/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace nhq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::NonThreeSatClause: return "NonThreeSatClause";
    case ErrorCode::VariableOutOfRange: return "VariableOutOfRange";
    case ErrorCode::DuplicateVariableInClause: return "DuplicateVariableInClause";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::SeriesRegime: return "SeriesRegime";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::FidelityBelowFloor: return "FidelityBelowFloor";
    case ErrorCode::NonDiagonalHamiltonian: return "NonDiagonalHamiltonian";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::MixedProblem: return "MixedProblem";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: break;
  }
  throw Error(ErrorCode::ParseError, std::string("not a Pauli letter: '") + c + "'");
}

namespace {

void check_width(int n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxPauliQubits) {
    throw Error(ErrorCode::TooLarge, "Pauli strings support at most 64 qubits, got " + std::to_string(n_qubits));
  }
}

std::uint64_t width_mask(int n_qubits) {
  return n_qubits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_qubits) - 1;
}

}  // namespace

PauliString::PauliString(int n_qubits) : n_qubits_(n_qubits) { check_width(n_qubits); }

PauliString::PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask) {
  check_width(n_qubits);
  if (((x_ | z_) & ~width_mask(n_qubits)) != 0) {
    throw Error(ErrorCode::IndexOutOfRange, "Pauli mask has bits beyond qubit count");
  }
}

PauliString PauliString::parse(std::string_view letters) {
  PauliString p(static_cast<int>(letters.size()));
  for (std::size_t q = 0; q < letters.size(); ++q) p.set(static_cast<int>(q), pauli_from_char(letters[q]));
  return p;
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p) {
  PauliString s(n_qubits);
  s.set(qubit, p);
  return s;
}

Pauli PauliString::at(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) throw Error(ErrorCode::IndexOutOfRange, "qubit index out of range");
  const bool x = (x_ >> qubit) & 1U;
  const bool z = (z_ >> qubit) & 1U;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

void PauliString::set(int qubit, Pauli p) {
  if (qubit < 0 || qubit >= n_qubits_) throw Error(ErrorCode::IndexOutOfRange, "qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  if (p == Pauli::X || p == Pauli::Y) x_ |= bit;
  if (p == Pauli::Z || p == Pauli::Y) z_ |= bit;
}

cplx PauliString::y_phase() const {
  switch (y_count() & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::string PauliString::letters() const {
  std::string s(static_cast<std::size_t>(n_qubits_), 'I');
  for (int q = 0; q < n_qubits_; ++q) s[static_cast<std::size_t>(q)] = to_char(at(q));
  return s;
}

std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
  if (auto c = a.n_qubits_ <=> b.n_qubits_; c != 0) return c;
  for (int q = 0; q < a.n_qubits_; ++q) {
    if (auto c = static_cast<int>(a.at(q)) <=> static_cast<int>(b.at(q)); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

Hamiltonian::Hamiltonian(int n_qubits, std::vector<PauliTerm> terms, double identity_offset)
    : n_qubits_(n_qubits), identity_offset_(identity_offset) {
  check_width(n_qubits);
  if (!std::isfinite(identity_offset)) throw Error(ErrorCode::InvalidArgument, "identity offset must be finite");
  canonicalize(std::move(terms));
}

void Hamiltonian::canonicalize(std::vector<PauliTerm> raw) {
  std::unordered_map<PauliString, double> merged;
  merged.reserve(raw.size() + terms_.size());
  for (const auto& t : terms_) merged[t.string] += t.coeff;
  for (const auto& t : raw) {
    if (!std::isfinite(t.coeff)) throw Error(ErrorCode::InvalidArgument, "Pauli coefficient must be finite");
    if (t.string.n_qubits() != n_qubits_) {
      throw Error(ErrorCode::DimensionMismatch, "term " + t.string.letters() + " does not match " +
                                                    std::to_string(n_qubits_) + " qubits");
    }
    if (t.string.is_identity()) {
      identity_offset_ += t.coeff;
    } else {
      merged[t.string] += t.coeff;
    }
  }
  terms_.clear();
  for (const auto& [s, c] : merged) {
    if (std::abs(c) >= kPruneThreshold) terms_.push_back({c, s});
  }
  std::sort(terms_.begin(), terms_.end(), [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
}

bool Hamiltonian::is_diagonal() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const PauliTerm& t) { return t.string.is_diagonal(); });
}

double Hamiltonian::coefficient_l1() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

Hamiltonian Hamiltonian::shifted(double c) const {
  Hamiltonian h = *this;
  h.identity_offset_ += c;
  return h;
}

Hamiltonian& Hamiltonian::operator+=(const Hamiltonian& other) {
  if (other.n_qubits_ != n_qubits_) throw Error(ErrorCode::DimensionMismatch, "adding Hamiltonians of different width");
  identity_offset_ += other.identity_offset_;
  canonicalize(other.terms_);
  return *this;
}

Hamiltonian& Hamiltonian::operator*=(double s) {
  std::vector<PauliTerm> scaled;
  scaled.reserve(terms_.size());
  for (const auto& t : terms_) scaled.push_back({t.coeff * s, t.string});
  terms_.clear();
  identity_offset_ *= s;
  canonicalize(std::move(scaled));
  return *this;
}

bool operator==(const Hamiltonian& a, const Hamiltonian& b) {
  if (a.n_qubits_ != b.n_qubits_ || a.identity_offset_ != b.identity_offset_ || a.terms_.size() != b.terms_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].string != b.terms_[i].string) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

PauliSumOperator::PauliSumOperator(const Hamiltonian& h)
    : n_qubits_(h.n_qubits()), offset_(h.identity_offset()), l1_(h.coefficient_l1()) {
  if (n_qubits_ > 30) throw Error(ErrorCode::TooLarge, "operator too large for dense statevector action");
  const std::size_t dim = std::size_t{1} << n_qubits_;
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (const auto& t : h.terms()) {
    const auto x = t.string.x_mask();
    auto [it, inserted] = index.try_emplace(x, groups_.size());
    if (inserted) groups_.push_back({x, Amplitudes::Zero(static_cast<Eigen::Index>(dim))});
    auto& phases = groups_[it->second].phases;
    for (std::size_t b = 0; b < dim; ++b) phases[static_cast<Eigen::Index>(b)] += t.coeff * t.string.phase(b);
  }
  std::sort(groups_.begin(), groups_.end(), [](const Group& a, const Group& b) { return a.x_mask < b.x_mask; });
}

void PauliSumOperator::apply_traceless(const Amplitudes& in, Amplitudes& out) const {
  if (static_cast<std::size_t>(in.size()) != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match operator");
  }
  const auto dim = static_cast<std::uint64_t>(in.size());
  out.setZero(in.size());
  for (const auto& g : groups_) {
    const auto x = g.x_mask;
    if (x == 0) {
      out.array() += g.phases.array() * in.array();
      continue;
    }
    for (std::uint64_t b = 0; b < dim; ++b) {
      out[static_cast<Eigen::Index>(b ^ x)] += g.phases[static_cast<Eigen::Index>(b)] * in[static_cast<Eigen::Index>(b)];
    }
  }
}

void PauliSumOperator::apply(const Amplitudes& in, Amplitudes& out) const {
  apply_traceless(in, out);
  if (offset_ != 0.0) out += offset_ * in;
}

cplx PauliSumOperator::matrix_element(const Amplitudes& a, const Amplitudes& b) const {
  Amplitudes hb;
  apply(b, hb);
  return a.dot(hb);
}

}  // namespace nhq
