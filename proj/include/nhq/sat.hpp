#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <string_view>
#include <vector>

#include "nhq/pauli.hpp"

namespace nhq {

struct Literal {
  int var = 0;  // 0-based
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

/// Boolean variable b_q lives on qubit q; true <-> |1>.
struct SatInstance {
  int n_vars = 0;
  std::vector<Clause> clauses;

  /// Throws VariableOutOfRange / DuplicateVariableInClause.
  void validate() const;
};

/// DIMACS CNF restricted to three literals per clause.
SatInstance parse_dimacs(std::istream& in);
SatInstance parse_dimacs(std::string_view text);

/// The 3-bit pattern (bit k for literal k) that falsifies the clause.
std::uint32_t violating_pattern(const Clause& clause);

/// Pauli expansion of the projector onto the falsifying assignment of the
/// clause's three variables: prod_k (I + s_k Z_{v_k}) / 2 with s_k = +1 when
/// the falsifying bit is 0 and -1 when it is 1. Always eight terms of weight
/// +-1/8, the identity term included.
std::vector<PauliTerm> clause_projector(const Clause& clause, int n_qubits);

/// Sum of clause projectors. Eigenvalues count violated clauses; the identity
/// weight m/8 ends up in identity_offset.
Hamiltonian sat_to_hamiltonian(const SatInstance& inst);

bool clause_satisfied(const Clause& clause, std::uint64_t assignment);
int count_violated(const SatInstance& inst, std::uint64_t assignment);

/// Exhaustive search; practical for n_vars <= ~24.
std::optional<std::uint64_t> brute_force_solve(const SatInstance& inst);

}  // namespace nhq
