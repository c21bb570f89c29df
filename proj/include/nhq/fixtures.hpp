#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nhq/pauli.hpp"

namespace nhq {

struct Fixture {
  std::string key;
  std::string description;
};

/// Pauli tables shipped with the library, as printed in the source tables.
std::string_view table_text(std::string_view key);

/// Keys: "table1" (5-variable 3-SAT operator, traceless), "sat5" (the same
/// with the clause offset 15/8 restored, so E_g = 0), "sat8" (8-variable table,
/// used as printed).
std::vector<Fixture> list_fixtures();
Hamiltonian fixture_hamiltonian(std::string_view key);

}  // namespace nhq
