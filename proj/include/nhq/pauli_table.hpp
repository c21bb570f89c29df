#pragma once

#include <string>
#include <string_view>

#include "nhq/pauli.hpp"

namespace nhq {

/// One "LETTERS : coeff" line per term in lexicographic order, then the
/// identity offset as an all-I line when it is nonzero. Coefficients use the
/// shortest representation that round-trips exactly.
std::string pauli_coefficient_table(const Hamiltonian& h);

/// Reads the emitted format and the LaTeX table layout it came from: entries
/// may be separated by '&', rows may end in "\\", and "\hline" is skipped.
/// All-I entries go to the identity offset. Letter strings must agree in
/// length; ParseError otherwise.
Hamiltonian parse_pauli_table(std::string_view text);

}  // namespace nhq
