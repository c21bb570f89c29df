#include "nhq/filter.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace nhq {

void FilterConfig::validate() const {
  if (dt && !(*dt > 0.0 && std::isfinite(*dt))) throw Error(ErrorCode::ConfigError, "dt must be > 0");
  if (max_steps < 1) throw Error(ErrorCode::ConfigError, "max_steps must be >= 1");
  if (!(margin > 0.0) || !std::isfinite(margin)) throw Error(ErrorCode::ConfigError, "margin must be > 0");
  if (!(eta > 0.0 && eta < 1.0)) throw Error(ErrorCode::ConfigError, "eta must lie in (0, 1)");
  if (!(convergence_tol > 0.0)) throw Error(ErrorCode::ConfigError, "convergence_tol must be > 0");
}

FilterSetup prepare_filter(const Hamiltonian& h, const FilterConfig& cfg) {
  cfg.validate();
  FilterSetup s;
  s.original = h;
  ShiftedProblem sp;
  if (h.n_qubits() <= kMaxDenseQubits) {
    s.spectrum = spectral_info(h);
    sp = shift_and_timestep(h, *s.spectrum, cfg.margin);
  } else {
    sp = shift_and_timestep_bound(h, cfg.margin);
  }
  s.shifted = std::move(sp.shifted);
  s.shift = sp.shift;
  s.dt = cfg.dt.value_or(sp.dt);
  s.original_op = PauliSumOperator(s.original);
  s.shifted_op = PauliSumOperator(s.shifted);
  return s;
}

FilterSetup prepare_filter(const Hamiltonian& h, double shift, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(shift)) throw Error(ErrorCode::InvalidArgument, "bad shift or dt");
  FilterSetup s;
  s.original = h;
  s.shifted = h.shifted(shift);
  s.shift = shift;
  s.dt = dt;
  if (h.n_qubits() <= kMaxDenseQubits) s.spectrum = spectral_info(h);
  s.original_op = PauliSumOperator(s.original);
  s.shifted_op = PauliSumOperator(s.shifted);
  return s;
}

std::optional<int> EvolutionTrace::steps_to(double tol, double e_ground) const {
  for (const auto& r : rows) {
    if (relative_error(r.energy, e_ground) < tol) return r.step;
  }
  return std::nullopt;
}

double relative_error(double energy, double e_ground) {
  if (e_ground == 0.0) return std::abs(energy);
  return std::abs(energy - e_ground) / std::abs(e_ground);
}

StepResult nh_step(const StateVector& state, const PauliSumOperator& shifted, double dt) {
  const double before = state.squared_norm();
  if (!(before > kMinNorm * kMinNorm)) throw Error(ErrorCode::ZeroNorm, "filter input has zero norm");
  CosSin cs = apply_cos_sin(shifted, dt, state);
  const double after = cs.cos_part.squared_norm();
  if (!(after > kMinNorm * kMinNorm)) throw Error(ErrorCode::ZeroNorm, "post-selected state vanished");
  return {std::move(cs.cos_part), after / before};
}

TraceRow measure_row(int step, const StateVector& state, const FilterSetup& setup, double success_prob) {
  TraceRow r;
  r.step = step;
  r.energy = expectation(setup.original_op, state);
  r.norm = state.norm();
  r.success_prob = success_prob;
  r.ground_fidelity = setup.spectrum ? subspace_fidelity(state, setup.spectrum->ground_space)
                                     : std::numeric_limits<double>::quiet_NaN();
  return r;
}

EvolutionTrace nh_evolve(const StateVector& psi0, const FilterSetup& setup, const FilterConfig& cfg) {
  cfg.validate();
  if (psi0.n_qubits() != setup.n_qubits()) throw Error(ErrorCode::DimensionMismatch, "initial state vs Hamiltonian");
  EvolutionTrace trace;
  StateVector state = psi0;
  double cumulative = 1.0;
  trace.rows.push_back(measure_row(0, state, setup, cumulative));
  int quiet = 0;
  for (int m = 1; m <= cfg.max_steps; ++m) {
    StepResult sr = nh_step(state, setup.shifted_op, setup.dt);
    cumulative *= sr.success_prob;
    state = std::move(sr.filtered);
    trace.rows.push_back(measure_row(m, state, setup, cumulative));
    if (cfg.stop_on_convergence) {
      const double de = trace.rows[m].energy - trace.rows[m - 1].energy;
      quiet = std::abs(de) < cfg.convergence_tol ? quiet + 1 : 0;
      if (quiet >= 3) {
        trace.converged = true;
        break;
      }
    }
  }
  trace.final_state = std::move(state);
  return trace;
}

EvolutionTrace nh_evolve(const StateVector& psi0, const Hamiltonian& h, const FilterConfig& cfg) {
  return nh_evolve(psi0, prepare_filter(h, cfg), cfg);
}

// ---------------------------------------------------------------------------

namespace {

// H' (x) Y on ancilla qubit `anc` of an (n + extra)-qubit register.
Hamiltonian block_generator(const Hamiltonian& shifted, int total_qubits, int anc) {
  const std::uint64_t ybit = std::uint64_t{1} << anc;
  std::vector<PauliTerm> terms;
  terms.reserve(shifted.num_terms() + 1);
  for (const auto& t : shifted.terms()) {
    terms.push_back({t.coeff, PauliString(total_qubits, t.string.x_mask() | ybit, t.string.z_mask() | ybit)});
  }
  if (shifted.identity_offset() != 0.0) {
    terms.push_back({shifted.identity_offset(), PauliString(total_qubits, ybit, ybit)});
  }
  return Hamiltonian(total_qubits, std::move(terms));
}

}  // namespace

AncillaRegister::AncillaRegister(const StateVector& system, const Hamiltonian& shifted, double dt, int n_ancillas)
    : n_system_(system.n_qubits()), n_ancillas_(n_ancillas), dt_(dt), shifted_(shifted) {
  if (n_ancillas < 1 || n_ancillas > kMaxExplicitAncillas) {
    throw Error(ErrorCode::TooLarge, "explicit-ancilla mode supports 1..8 ancillas");
  }
  if (shifted.n_qubits() != n_system_) throw Error(ErrorCode::DimensionMismatch, "Hamiltonian vs system state");
  if (n_system_ + n_ancillas > kMaxStateQubits) throw Error(ErrorCode::TooLarge, "joint register too wide");
  Amplitudes a = Amplitudes::Zero(Eigen::Index{1} << (n_system_ + n_ancillas));
  a.head(system.dim()) = system.amplitudes();
  joint_ = StateVector(n_system_ + n_ancillas, std::move(a));
}

void AncillaRegister::apply_block() {
  if (blocks_ >= n_ancillas_) throw Error(ErrorCode::IndexOutOfRange, "no fresh ancilla left");
  const int total = n_system_ + n_ancillas_;
  PauliSumOperator gen(block_generator(shifted_, total, n_system_ + blocks_));
  joint_ = evolve(gen, dt_, joint_);
  ++blocks_;
}

void AncillaRegister::apply_system_gates(const std::vector<Gate>& gates) {
  for (const auto& g : gates) {
    if (g.target >= n_system_ || g.control >= n_system_) throw Error(ErrorCode::IndexOutOfRange, "gate outside system register");
    if (g.kind == Gate::Kind::PauliRotation) {
      // Widen the string to the joint register.
      Gate wide = g;
      wide.pauli = PauliString(joint_.n_qubits(), g.pauli.x_mask(), g.pauli.z_mask());
      apply_gate(joint_, wide);
    } else {
      apply_gate(joint_, g);
    }
  }
}

StateVector AncillaRegister::project_all_zero() const {
  return StateVector(n_system_, joint_.amplitudes().head(Eigen::Index{1} << n_system_));
}

double AncillaRegister::z_correlator(std::uint64_t subset, const PauliSumOperator* system_op) const {
  const Eigen::Index block = Eigen::Index{1} << n_system_;
  const std::uint64_t configs = std::uint64_t{1} << n_ancillas_;
  double acc = 0.0;
  for (std::uint64_t a = 0; a < configs; ++a) {
    const Amplitudes v = joint_.amplitudes().segment(static_cast<Eigen::Index>(a) * block, block);
    const double sign = (std::popcount(a & subset) & 1) ? -1.0 : 1.0;
    const double value = system_op ? system_op->matrix_element(v, v).real() : v.squaredNorm();
    acc += sign * value;
  }
  return acc;
}

namespace {

void check_m(int m, int limit) {
  if (m < 0 || m > limit) throw Error(ErrorCode::TooLarge, "explicit-ancilla step count must be in [0, " + std::to_string(limit) + "]");
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

double postprocess_energy(const StateVector& psi0, const FilterSetup& setup, int m) {
  check_m(m, kMaxExplicitAncillas);
  if (m == 0) return expectation(setup.original_op, psi0);
  // phi_i uses i ancillas; one register of width m serves every i since the
  // unused ancillas stay in |0> and Z on them is trivial.
  AncillaRegister reg(psi0, setup.shifted, setup.dt, m);
  double num = reg.z_correlator(0, &setup.original_op);
  double den = reg.z_correlator(0, nullptr);
  for (int i = 1; i <= m; ++i) {
    reg.apply_block();
    const std::uint64_t first_i = (std::uint64_t{1} << i) - 1;
    const double w = binomial(m, i);
    num += w * reg.z_correlator(first_i, &setup.original_op);
    den += w * reg.z_correlator(first_i, nullptr);
  }
  if (!(std::abs(den) > kMinNorm)) throw Error(ErrorCode::ZeroNorm, "post-processing denominator vanished");
  return num / den;
}

double projector_energy(const StateVector& psi0, const FilterSetup& setup, int m) {
  check_m(m, kMaxExplicitAncillas);
  if (m == 0) return expectation(setup.original_op, psi0);
  AncillaRegister reg(psi0, setup.shifted, setup.dt, m);
  for (int i = 0; i < m; ++i) reg.apply_block();
  return expectation(setup.original_op, reg.project_all_zero());
}

double time_translation_check(const StateVector& psi0, const FilterSetup& setup, int m, const std::vector<Gate>& interleave) {
  check_m(m, 6);
  if (m <= 1) return 0.0;
  auto build = [&](int blocks) {
    AncillaRegister reg(psi0, setup.shifted, setup.dt, m);
    for (int b = 0; b < blocks; ++b) {
      reg.apply_block();
      if (b + 1 < blocks) reg.apply_system_gates(interleave);
    }
    return reg;
  };
  std::vector<AncillaRegister> ref;
  for (int k = 0; k <= m; ++k) ref.push_back(build(k));
  const AncillaRegister& full = ref.back();

  double worst = 0.0;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << m); ++s) {
    const int k = std::popcount(s);
    const std::uint64_t first_k = (std::uint64_t{1} << k) - 1;
    for (const PauliSumOperator* op : {static_cast<const PauliSumOperator*>(nullptr), &setup.original_op}) {
      const double lhs = full.z_correlator(s, op);
      const double rhs = ref[static_cast<std::size_t>(k)].z_correlator(first_k, op);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

long required_steps_estimate(double gap, double chi, double eps) {
  if (!(gap > 0.0) || !std::isfinite(gap)) throw Error(ErrorCode::InvalidArgument, "gap must be > 0");
  if (!(chi > 0.0 && chi <= 1.0)) throw Error(ErrorCode::InvalidArgument, "chi must lie in (0, 1]");
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidArgument, "eps must lie in (0, 1)");
  const double l = std::log(1.0 / (chi * eps));
  return std::max(1L, static_cast<long>(std::ceil(l * l / (gap * gap))));
}

}  // namespace nhq
