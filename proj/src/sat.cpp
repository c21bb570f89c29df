#include "nhq/sat.hpp"

#include <sstream>
#include <string>

namespace nhq {

void SatInstance::validate() const {
  if (n_vars < 1 || n_vars > kMaxPauliQubits) {
    throw Error(ErrorCode::VariableOutOfRange, "variable count must be in [1, 64]");
  }
  for (const auto& c : clauses) {
    for (int a = 0; a < 3; ++a) {
      if (c[a].var < 0 || c[a].var >= n_vars) {
        throw Error(ErrorCode::VariableOutOfRange, "variable " + std::to_string(c[a].var + 1) + " exceeds n_vars");
      }
      for (int b = a + 1; b < 3; ++b) {
        if (c[a].var == c[b].var) {
          throw Error(ErrorCode::DuplicateVariableInClause,
                      "variable " + std::to_string(c[a].var + 1) + " repeated in clause");
        }
      }
    }
  }
}

SatInstance parse_dimacs(std::istream& in) {
  SatInstance inst;
  long declared_clauses = -1;
  std::vector<Literal> pending;
  std::string line;
  int line_no = 0;

  auto finish_clause = [&]() {
    if (pending.size() != 3) {
      throw Error(ErrorCode::NonThreeSatClause, "clause " + std::to_string(inst.clauses.size() + 1) + " has " +
                                                    std::to_string(pending.size()) + " literals");
    }
    Clause c{pending[0], pending[1], pending[2]};
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        if (c[a].var == c[b].var) {
          throw Error(ErrorCode::DuplicateVariableInClause,
                      "variable " + std::to_string(c[a].var + 1) + " repeated in clause on line " +
                          std::to_string(line_no));
        }
      }
    }
    inst.clauses.push_back(c);
    pending.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const char lead = line[first];
    if (lead == 'c') continue;
    if (lead == '%') break;  // SATLIB trailer
    if (lead == 'p') {
      if (declared_clauses >= 0) throw Error(ErrorCode::MalformedHeader, "duplicate problem line");
      std::istringstream hs(line.substr(first));
      std::string p, fmt;
      long nv = -1, nc = -1;
      if (!(hs >> p >> fmt >> nv >> nc) || p != "p" || fmt != "cnf" || nv < 1 || nc < 0) {
        throw Error(ErrorCode::MalformedHeader, "expected 'p cnf <nvars> <nclauses>', got '" + line + "'");
      }
      std::string extra;
      if (hs >> extra) throw Error(ErrorCode::MalformedHeader, "trailing tokens in problem line");
      if (nv > kMaxPauliQubits) throw Error(ErrorCode::VariableOutOfRange, "more than 64 variables");
      inst.n_vars = static_cast<int>(nv);
      declared_clauses = nc;
      continue;
    }
    if (declared_clauses < 0) throw Error(ErrorCode::MalformedHeader, "clause data before problem line");
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      long v = 0;
      try {
        std::size_t used = 0;
        v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(ErrorCode::MalformedHeader, "non-integer token '" + tok + "' on line " + std::to_string(line_no));
      }
      if (v == 0) {
        finish_clause();
        continue;
      }
      const long var = v < 0 ? -v : v;
      if (var > inst.n_vars) {
        throw Error(ErrorCode::VariableOutOfRange,
                    "literal " + std::to_string(v) + " exceeds " + std::to_string(inst.n_vars) + " variables");
      }
      pending.push_back({static_cast<int>(var - 1), v < 0});
    }
  }
  if (declared_clauses < 0) throw Error(ErrorCode::MalformedHeader, "missing problem line");
  if (!pending.empty()) finish_clause();  // tolerate a missing final 0
  if (static_cast<long>(inst.clauses.size()) != declared_clauses) {
    throw Error(ErrorCode::MalformedHeader, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                                std::to_string(inst.clauses.size()));
  }
  return inst;
}

SatInstance parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

std::uint32_t violating_pattern(const Clause& clause) {
  // A positive literal fails when its variable is 0, a negated one when it is 1.
  std::uint32_t bits = 0;
  for (int k = 0; k < 3; ++k) {
    if (clause[k].negated) bits |= 1U << k;
  }
  return bits;
}

std::vector<PauliTerm> clause_projector(const Clause& clause, int n_qubits) {
  for (int a = 0; a < 3; ++a) {
    if (clause[a].var < 0 || clause[a].var >= n_qubits) {
      throw Error(ErrorCode::VariableOutOfRange, "clause variable outside register");
    }
    for (int b = a + 1; b < 3; ++b) {
      if (clause[a].var == clause[b].var) throw Error(ErrorCode::DuplicateVariableInClause, "repeated variable");
    }
  }
  const std::uint32_t pattern = violating_pattern(clause);
  std::vector<PauliTerm> out;
  out.reserve(8);
  for (std::uint32_t subset = 0; subset < 8; ++subset) {
    double coeff = 0.125;
    std::uint64_t z = 0;
    for (int k = 0; k < 3; ++k) {
      if ((subset >> k) & 1U) {
        z |= std::uint64_t{1} << clause[k].var;
        if ((pattern >> k) & 1U) coeff = -coeff;
      }
    }
    out.push_back({coeff, PauliString(n_qubits, 0, z)});
  }
  return out;
}

Hamiltonian sat_to_hamiltonian(const SatInstance& inst) {
  inst.validate();
  std::vector<PauliTerm> all;
  all.reserve(inst.clauses.size() * 8);
  for (const auto& c : inst.clauses) {
    auto terms = clause_projector(c, inst.n_vars);
    all.insert(all.end(), terms.begin(), terms.end());
  }
  return Hamiltonian(inst.n_vars, std::move(all));
}

bool clause_satisfied(const Clause& clause, std::uint64_t assignment) {
  for (const auto& lit : clause) {
    const bool value = (assignment >> lit.var) & 1U;
    if (value != lit.negated) return true;
  }
  return false;
}

int count_violated(const SatInstance& inst, std::uint64_t assignment) {
  int n = 0;
  for (const auto& c : inst.clauses) n += clause_satisfied(c, assignment) ? 0 : 1;
  return n;
}

std::optional<std::uint64_t> brute_force_solve(const SatInstance& inst) {
  if (inst.n_vars > 30) throw Error(ErrorCode::TooLarge, "exhaustive search limited to 30 variables");
  const std::uint64_t count = std::uint64_t{1} << inst.n_vars;
  for (std::uint64_t a = 0; a < count; ++a) {
    if (count_violated(inst, a) == 0) return a;
  }
  return std::nullopt;
}

}  // namespace nhq
