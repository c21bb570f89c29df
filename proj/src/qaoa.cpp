#include "nhq/qaoa.hpp"

#include <cmath>
#include <limits>

namespace nhq {

void QaoaConfig::validate() const {
  if (depth < 1) throw Error(ErrorCode::ConfigError, "QAOA depth must be >= 1");
  if (starts < 1) throw Error(ErrorCode::ConfigError, "QAOA starts must be >= 1");
  if (initial && initial->size() != 2 * depth) throw Error(ErrorCode::LengthMismatch, "QAOA needs 2p parameters");
  optimizer.validate();
}

namespace {

struct ProblemUnitary {
  Eigen::VectorXd diagonal;             // energies of the Z-only part per basis state
  std::vector<PauliTerm> off_diagonal;  // everything else
};

ProblemUnitary compile(const Hamiltonian& h) {
  ProblemUnitary u;
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  u.diagonal = Eigen::VectorXd::Zero(dim);
  for (const auto& t : h.terms()) {
    if (!t.string.is_diagonal()) {
      u.off_diagonal.push_back(t);
      continue;
    }
    for (Eigen::Index b = 0; b < dim; ++b) {
      u.diagonal[b] += t.coeff * t.string.phase(static_cast<std::uint64_t>(b)).real();
    }
  }
  return u;
}

StateVector apply_qaoa(const ProblemUnitary& u, int n, const ParamVector& params, const StateVector& psi0) {
  if (params.size() % 2 != 0 || params.size() == 0) throw Error(ErrorCode::LengthMismatch, "QAOA needs 2p parameters");
  const Eigen::Index p = params.size() / 2;
  StateVector s = psi0;
  for (Eigen::Index k = 0; k < p; ++k) {
    const double gamma = params[k];
    const double beta = params[p + k];
    auto& a = s.amplitudes();
    for (Eigen::Index b = 0; b < a.size(); ++b) a[b] *= std::exp(cplx(0.0, -gamma * u.diagonal[b]));
    for (const auto& t : u.off_diagonal) apply_gate(s, Gate::pauli_rotation(t.string, 2.0 * gamma * t.coeff));
    for (int q = 0; q < n; ++q) apply_gate(s, Gate::rx(q, 2.0 * beta));
  }
  return s;
}

}  // namespace

StateVector qaoa_state(const Hamiltonian& h, const ParamVector& params, const StateVector& psi0) {
  if (psi0.n_qubits() != h.n_qubits()) throw Error(ErrorCode::DimensionMismatch, "QAOA state vs Hamiltonian");
  return apply_qaoa(compile(h), h.n_qubits(), params, psi0);
}

ParamVector qaoa_ramp(int depth) {
  ParamVector x(2 * depth);
  for (int k = 0; k < depth; ++k) {
    const double f = (k + 0.5) / depth;
    x[k] = 0.8 * f;
    x[depth + k] = 0.8 * (1.0 - f);
  }
  return x;
}

QaoaResult qaoa_run(const Hamiltonian& h, const QaoaConfig& cfg, const std::optional<StateVector>& psi0) {
  cfg.validate();
  const int n = h.n_qubits();
  const StateVector start = psi0.value_or(StateVector::plus(n));
  if (start.n_qubits() != n) throw Error(ErrorCode::DimensionMismatch, "QAOA state vs Hamiltonian");
  const ProblemUnitary u = compile(h);
  const PauliSumOperator op(h);
  const Objective energy = [&](const ParamVector& x) { return expectation(op, apply_qaoa(u, n, x, start)); };

  QaoaResult best;
  best.energy = std::numeric_limits<double>::infinity();
  Rng rng(cfg.optimizer.seed);
  for (int s = 0; s < cfg.starts; ++s) {
    ParamVector x0 = cfg.initial.value_or(qaoa_ramp(cfg.depth));
    if (s > 0) {
      for (auto& v : x0) v += 0.3 * rng.normal();
    }
    const OptimizeResult r = minimize(energy, x0, cfg.optimizer);
    best.evaluations += r.evaluations;
    best.exhausted = best.exhausted || r.exhausted;
    if (r.f < best.energy) {
      best.energy = r.f;
      best.params = r.x;
    }
  }

  std::optional<SpectralInfo> info;
  if (n <= kMaxDenseQubits) info = spectral_info(h);
  const double cumulative = 1.0;
  auto row = [&](int step, const StateVector& s) {
    TraceRow r;
    r.step = step;
    r.energy = expectation(op, s);
    r.norm = s.norm();
    r.success_prob = cumulative;
    r.ground_fidelity = info ? subspace_fidelity(s, info->ground_space) : std::numeric_limits<double>::quiet_NaN();
    return r;
  };
  best.trace.rows.push_back(row(0, start));
  for (int k = 1; k <= cfg.depth; ++k) {
    ParamVector partial(2 * k);
    partial.head(k) = best.params.head(k);
    partial.tail(k) = best.params.segment(cfg.depth, k);
    best.trace.rows.push_back(row(k, apply_qaoa(u, n, partial, start)));
  }
  best.trace.final_state = apply_qaoa(u, n, best.params, start);
  return best;
}

QaoaResult qaoa_sweep(const Hamiltonian& h, int max_depth, const QaoaConfig& cfg, const std::optional<StateVector>& psi0) {
  if (max_depth < 1) throw Error(ErrorCode::ConfigError, "QAOA depth must be >= 1");
  QaoaResult out;
  for (int p = 1; p <= max_depth; ++p) {
    QaoaConfig c = cfg;
    c.depth = p;
    if (c.initial && c.initial->size() != 2 * p) c.initial.reset();
    QaoaResult r = qaoa_run(h, c, psi0);
    if (p == 1) out.trace.rows.push_back(r.trace.rows.front());
    TraceRow last = r.trace.rows.back();
    last.step = p;
    out.trace.rows.push_back(last);
    out.params = r.params;
    out.energy = r.energy;
    out.trace.final_state = r.trace.final_state;
    out.evaluations += r.evaluations;
    out.exhausted = out.exhausted || r.exhausted;
  }
  return out;
}

}  // namespace nhq
