#pragma once

#include <bit>
#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "nhq/error.hpp"

namespace nhq {

using cplx = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;

/// Largest register a PauliString can describe (two 64-bit masks).
inline constexpr int kMaxPauliQubits = 64;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-qubit Paulis, stored as an (x, z) bitmask pair.
///
/// Qubit q corresponds to bit q of both masks and to character q of the
/// letter string, so "IIIIZ" is Z acting on qubit 4 of 5. Acting on a basis
/// state, P|b> = i^{#Y} (-1)^{popcount(b & z)} |b ^ x>.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits);
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  static PauliString parse(std::string_view letters);
  static PauliString single(int n_qubits, int qubit, Pauli p);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  Pauli at(int qubit) const;
  void set(int qubit, Pauli p);

  bool is_identity() const { return (x_ | z_) == 0; }
  bool is_diagonal() const { return x_ == 0; }
  int weight() const { return std::popcount(x_ | z_); }
  int y_count() const { return std::popcount(x_ & z_); }

  /// i^{#Y}, the constant phase of the x/z factorisation.
  cplx y_phase() const;

  /// Phase acquired by basis state |b> (before the bit flip b -> b ^ x).
  cplx phase(std::uint64_t basis) const {
    const bool odd = (std::popcount(basis & z_) & 1) != 0;
    const cplx p = y_phase();
    return odd ? -p : p;
  }

  std::string letters() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  /// Lexicographic on the letter string with I < X < Y < Z.
  friend std::strong_ordering operator<=>(const PauliString& a, const PauliString& b);

 private:
  int n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliTerm {
  double coeff = 0.0;
  PauliString string;
};

/// Real-weighted Pauli sum with the identity component held separately.
///
/// Construction merges duplicate strings, drops terms with |coeff| below
/// kPruneThreshold and folds any all-identity term into identity_offset.
/// Terms are kept in lexicographic order of their letters.
class Hamiltonian {
 public:
  static constexpr double kPruneThreshold = 1e-12;

  Hamiltonian() = default;
  explicit Hamiltonian(int n_qubits, std::vector<PauliTerm> terms = {}, double identity_offset = 0.0);

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  double identity_offset() const { return identity_offset_; }

  bool is_diagonal() const;
  /// Sum of |coeff| over the non-identity terms.
  double coefficient_l1() const;
  /// Gershgorin-style spectral radius bound |offset| + sum |coeff|.
  double norm_bound() const { return std::abs(identity_offset_) + coefficient_l1(); }

  /// H + c I; only the identity offset changes.
  Hamiltonian shifted(double c) const;

  Hamiltonian& operator+=(const Hamiltonian& other);
  friend Hamiltonian operator+(Hamiltonian a, const Hamiltonian& b) { return a += b; }
  Hamiltonian& operator*=(double s);
  friend Hamiltonian operator*(double s, Hamiltonian h) { return h *= s; }

  friend bool operator==(const Hamiltonian& a, const Hamiltonian& b);

 private:
  void canonicalize(std::vector<PauliTerm> raw);

  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
  double identity_offset_ = 0.0;
};

/// Hamiltonian compiled for repeated matrix-vector products.
///
/// Terms sharing an x-mask collapse into one diagonal phase vector, so a
/// product costs (#distinct x-masks) * 2^n complex multiply-adds. The
/// identity offset is not folded in; callers that need it add it themselves
/// (apply() does so, apply_traceless() does not).
class PauliSumOperator {
 public:
  PauliSumOperator() = default;
  explicit PauliSumOperator(const Hamiltonian& h);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return std::size_t{1} << n_qubits_; }
  double identity_offset() const { return offset_; }
  double traceless_l1() const { return l1_; }
  std::size_t num_groups() const { return groups_.size(); }

  /// out = (H - offset) in
  void apply_traceless(const Amplitudes& in, Amplitudes& out) const;
  /// out = H in
  void apply(const Amplitudes& in, Amplitudes& out) const;
  /// <a| H |b>, offset included
  cplx matrix_element(const Amplitudes& a, const Amplitudes& b) const;

 private:
  struct Group {
    std::uint64_t x_mask = 0;
    Amplitudes phases;
  };

  int n_qubits_ = 0;
  double offset_ = 0.0;
  double l1_ = 0.0;
  std::vector<Group> groups_;
};

}  // namespace nhq

template <>
struct std::hash<nhq::PauliString> {
  std::size_t operator()(const nhq::PauliString& p) const noexcept {
    std::size_t h = std::hash<std::uint64_t>{}(p.x_mask());
    h ^= std::hash<std::uint64_t>{}(p.z_mask()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(p.n_qubits());
  }
};
