#include "nhq/pauli_table.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace nhq {

namespace {

std::string format_coeff(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool is_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

}  // namespace

std::string pauli_coefficient_table(const Hamiltonian& h) {
  std::string out;
  for (const auto& t : h.terms()) {
    out += t.string.letters();
    out += " : ";
    out += format_coeff(t.coeff);
    out += '\n';
  }
  if (h.identity_offset() != 0.0) {
    out += std::string(static_cast<std::size_t>(h.n_qubits()), 'I');
    out += " : ";
    out += format_coeff(h.identity_offset());
    out += '\n';
  }
  return out;
}

Hamiltonian parse_pauli_table(std::string_view text) {
  // Flatten the LaTeX decorations into whitespace and tokenize.
  std::string clean(text);
  for (std::size_t pos; (pos = clean.find("\\hline")) != std::string::npos;) clean.replace(pos, 6, " ");
  for (auto& c : clean) {
    if (c == '&' || c == '\\') c = ' ';
  }

  std::istringstream in(clean);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);

  int n = -1;
  std::vector<PauliTerm> terms;
  double offset = 0.0;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::string letters = tokens[i];
    std::string coeff_text;
    // Accept "LETTERS : c", "LETTERS: c", and "LETTERS :c".
    if (auto colon = letters.find(':'); colon != std::string::npos) {
      coeff_text = letters.substr(colon + 1);
      letters.resize(colon);
      ++i;
    } else {
      if (i + 1 >= tokens.size() || tokens[i + 1][0] != ':') {
        throw Error(ErrorCode::ParseError, "expected ':' after '" + letters + "'");
      }
      coeff_text = tokens[i + 1].substr(1);
      i += 2;
    }
    if (coeff_text.empty()) {
      if (i >= tokens.size()) throw Error(ErrorCode::ParseError, "missing coefficient after '" + letters + "'");
      coeff_text = tokens[i++];
    }
    if (letters.empty()) throw Error(ErrorCode::ParseError, "empty Pauli string");
    for (char c : letters) {
      if (!is_letter(c)) throw Error(ErrorCode::ParseError, "bad Pauli letter in '" + letters + "'");
    }
    if (n < 0) n = static_cast<int>(letters.size());
    if (static_cast<int>(letters.size()) != n) throw Error(ErrorCode::ParseError, "inconsistent string length at '" + letters + "'");

    double v = 0.0;
    const char* first = coeff_text.data();
    const char* last = first + coeff_text.size();
    if (*first == '+') ++first;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v)) {
      throw Error(ErrorCode::ParseError, "bad coefficient '" + coeff_text + "'");
    }
    PauliString p = PauliString::parse(letters);
    if (p.is_identity()) {
      offset += v;
    } else {
      terms.push_back({v, p});
    }
  }
  if (n < 0) throw Error(ErrorCode::EmptyInput, "no table entries");
  return Hamiltonian(n, std::move(terms), offset);
}

}  // namespace nhq
