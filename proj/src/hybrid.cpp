#include "nhq/hybrid.hpp"

namespace nhq {

HybridResult hybrid_cucu(const StateVector& psi0, const FilterSetup& setup, const AnsatzSpec& block,
                         const FilterConfig& cfg, const OptimizerConfig& opt) {
  cfg.validate();
  if (psi0.n_qubits() != setup.n_qubits()) throw Error(ErrorCode::DimensionMismatch, "initial state vs Hamiltonian");
  if (!block.empty() && block.n_qubits != setup.n_qubits()) throw Error(ErrorCode::DimensionMismatch, "block width");

  HybridResult out;
  StateVector state = psi0;
  double cumulative = 1.0;
  out.initial_energy = expectation(setup.original_op, state);
  out.trace.rows.push_back(measure_row(0, state, setup, cumulative));
  const int p = block.empty() ? 0 : block.num_params();

  for (int m = 1; m <= cfg.max_steps; ++m) {
    if (p > 0) {
      const Objective lookahead = [&](const ParamVector& w) {
        const StepResult r = nh_step(ansatz_apply(block, w, state), setup.shifted_op, setup.dt);
        return expectation(setup.original_op, r.filtered);
      };
      OptimizerConfig c = opt;
      c.seed = opt.seed == 0 ? 0 : opt.seed + static_cast<std::uint64_t>(m);
      const OptimizeResult r = minimize(lookahead, ParamVector::Zero(p), c);
      out.evaluations += r.evaluations;
      out.exhausted = out.exhausted || r.exhausted;
      out.block_params.push_back(r.x);
      state = ansatz_apply(block, r.x, state);
    }
    StepResult sr = nh_step(state, setup.shifted_op, setup.dt);
    cumulative *= sr.success_prob;
    state = std::move(sr.filtered);
    out.trace.rows.push_back(measure_row(m, state, setup, cumulative));
  }
  out.trace.final_state = std::move(state);
  return out;
}

HybridResult hybrid_uucc(const StateVector& psi0, const FilterSetup& setup, const AnsatzSpec& front,
                         const FilterConfig& cfg, const OptimizerConfig& opt) {
  cfg.validate();
  if (psi0.n_qubits() != setup.n_qubits()) throw Error(ErrorCode::DimensionMismatch, "initial state vs Hamiltonian");
  HybridResult out;
  out.initial_energy = expectation(setup.original_op, psi0);
  StateVector start = psi0;
  if (!front.empty()) {
    if (front.n_qubits != setup.n_qubits()) throw Error(ErrorCode::DimensionMismatch, "front block width");
    const Objective energy = [&](const ParamVector& w) { return expectation(setup.original_op, ansatz_apply(front, w, psi0)); };
    const OptimizeResult r = minimize(energy, ParamVector::Zero(front.num_params()), opt);
    out.evaluations = r.evaluations;
    out.exhausted = r.exhausted;
    out.block_params.push_back(r.x);
    start = ansatz_apply(front, r.x, psi0);
  }
  out.trace = nh_evolve(start, setup, cfg);
  return out;
}

ResourceEstimate resource_estimate(const ResourceInputs& in) {
  if (in.n_step < 0 || in.n_u < 0 || in.n_h < 0 || in.n_para < 0 || in.n_ite < 1 || in.n_shots < 1) {
    throw Error(ErrorCode::InvalidArgument, "resource factors must be nonnegative");
  }
  ResourceEstimate e;
  e.n_depth = in.n_step * in.n_u;
  e.n_meas = in.n_h * in.n_para * in.n_ite * in.n_shots;
  e.depth_cell = std::to_string(in.n_step) + "*" + std::to_string(in.n_u) + " = " + std::to_string(e.n_depth);

  std::string para = std::to_string(in.n_para);
  if (in.para_per_step) {
    if (in.n_step * *in.para_per_step != in.n_para) throw Error(ErrorCode::InvalidArgument, "n_para != n_step * para_per_step");
    para = "(" + std::to_string(in.n_step) + "*" + std::to_string(*in.para_per_step) + ")";
  }
  e.meas_cell = std::to_string(in.n_h) + "*" + para;
  if (in.n_ite != 1) e.meas_cell += "*" + std::to_string(in.n_ite);
  if (in.n_shots != 1) e.meas_cell += "*" + std::to_string(in.n_shots);
  e.meas_cell += " = " + std::to_string(e.n_meas);
  return e;
}

long measurement_bases(const Hamiltonian& h) {
  long off = 0;
  bool any_diag = false;
  for (const auto& t : h.terms()) {
    if (t.string.is_diagonal()) {
      any_diag = true;
    } else {
      ++off;
    }
  }
  return off + ((any_diag || off == 0) ? 1 : 0);
}

}  // namespace nhq
