#include "nhq/recording.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace nhq {

void RecordingConfig::validate() const {
  if (segment_length < 1) throw Error(ErrorCode::ConfigError, "segment length C must be >= 1");
  if (repetitions < 1) throw Error(ErrorCode::ConfigError, "repetitions must be >= 1");
  if (!(eta > 0.0 && eta < 1.0)) throw Error(ErrorCode::ConfigError, "eta must lie in (0, 1)");
  if (!(fidelity_floor >= 0.0 && fidelity_floor <= 1.0)) throw Error(ErrorCode::ConfigError, "fidelity floor outside [0, 1]");
  if (ansatz.n_qubits < 1) throw Error(ErrorCode::ConfigError, "recording ansatz is missing");
  optimizer.validate();
  if (mode == RecordMode::ReducedCO && !(c_b > 0.0)) throw Error(ErrorCode::ConfigError, "C_B must be > 0");
  if (mode == RecordMode::ReducedMB) {
    if (static_cast<int>(c_r_schedule.size()) != repetitions) {
      throw Error(ErrorCode::ConfigError, "C_r schedule length must equal repetitions");
    }
    for (double c : c_r_schedule) {
      if (!(c > 0.0 && c <= 1.0)) throw Error(ErrorCode::ConfigError, "each C_r must lie in (0, 1]");
    }
  }
}

SegmentLength segment_length_for_eta(const StateVector& psi0, const FilterSetup& setup, double eta, int cap) {
  if (!(eta > 0.0 && eta < 1.0)) throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1)");
  if (cap < 1) throw Error(ErrorCode::InvalidArgument, "cap must be >= 1");
  const double n0 = psi0.norm();
  StateVector s = psi0;
  for (int m = 1; m <= cap; ++m) {
    s = apply_cos_sin(setup.shifted_op, setup.dt, s).cos_part;
    if (s.norm() / n0 <= eta) {
      if (m - 1 < 1) return {1, true, false};
      return {m - 1, false, false};
    }
  }
  return {cap, false, true};
}

namespace {

StateVector reference_zero(const AnsatzSpec& spec) { return StateVector::zero(spec.n_qubits); }

StateVector filter_steps(const StateVector& s, const FilterSetup& setup, int c) {
  StateVector out = s;
  for (int k = 0; k < c; ++k) out = nh_step(out, setup.shifted_op, setup.dt).filtered;
  return out;
}

// 1/n sum_q P(qubit q reads 1) on a normalized state.
double marginal_loss(const StateVector& s) {
  const auto& a = s.amplitudes();
  double acc = 0.0;
  for (Eigen::Index b = 0; b < a.size(); ++b) acc += std::norm(a[b]) * std::popcount(static_cast<std::uint64_t>(b));
  return acc / s.n_qubits();
}

TraceRow recorded_row(int step, const StateVector& recorded, const FilterSetup& setup, double prob, int segment,
                      double metric) {
  TraceRow r = measure_row(step, recorded, setup, prob);
  r.segment_index = segment;
  r.record_metric = metric;
  return r;
}

}  // namespace

double record_fidelity(const AnsatzSpec& spec, const ParamVector& omega, const StateVector& target) {
  const StateVector v = ansatz_apply(spec, omega, reference_zero(spec));
  return std::norm(overlap(target, v)) / target.squared_norm();
}

SegmentRecord full_record_segment(const AnsatzSpec& spec, const ParamVector& omega, const FilterSetup& setup, int c,
                                  const OptimizerConfig& opt, double floor, FidelityLoss loss) {
  if (c < 1) throw Error(ErrorCode::InvalidArgument, "segment length must be >= 1");
  if (spec.n_qubits != setup.n_qubits()) throw Error(ErrorCode::DimensionMismatch, "ansatz width vs Hamiltonian");
  const StateVector current = ansatz_apply(spec, omega, reference_zero(spec));
  StateVector target = filter_steps(current, setup, c);
  SegmentRecord rec;
  rec.segment_prob = target.squared_norm() / current.squared_norm();
  target.normalize();

  const Objective objective = [&](const ParamVector& d) {
    const ParamVector w = omega + d;
    if (loss == FidelityLoss::Global) return 1.0 - record_fidelity(spec, w, target);
    StateVector back = target;
    apply_gates(back, inverse_gates(spec.gates(w)));
    return marginal_loss(back);
  };
  const OptimizeResult r = minimize(objective, ParamVector::Zero(omega.size()), opt);
  rec.omega = omega + r.x;
  rec.loss = r.f;
  rec.fidelity = record_fidelity(spec, rec.omega, target);
  rec.evaluations = r.evaluations;
  if (rec.fidelity < floor) {
    throw Error(ErrorCode::FidelityBelowFloor,
                "recording fidelity " + std::to_string(rec.fidelity) + " below floor " + std::to_string(floor));
  }
  return rec;
}

double record_fidelity_projector(const AnsatzSpec& spec, const ParamVector& old_omega, const ParamVector& new_omega,
                                 const FilterSetup& setup, int c) {
  const StateVector start = ansatz_apply(spec, old_omega, reference_zero(spec));
  AncillaRegister reg(start, setup.shifted, setup.dt, c);
  for (int k = 0; k < c; ++k) reg.apply_block();
  reg.apply_system_gates(inverse_gates(spec.gates(new_omega)));
  const StateVector kept = reg.project_all_zero();  // P_A
  const double pa = kept.squared_norm();
  if (!(pa > kMinNorm * kMinNorm)) throw Error(ErrorCode::ZeroNorm, "ancilla post-selection vanished");
  return std::norm(kept[0]) / pa;  // P_S picks |0...0>
}

RecordingResult full_record_run(const FilterSetup& setup, const RecordingConfig& cfg) {
  cfg.validate();
  if (cfg.mode != RecordMode::Full) throw Error(ErrorCode::ConfigError, "full_record_run needs mode Full");
  RecordingResult out;
  ParamVector omega = ParamVector::Zero(cfg.ansatz.num_params());
  StateVector recorded = ansatz_apply(cfg.ansatz, omega, reference_zero(cfg.ansatz));
  out.trace.rows.push_back(measure_row(0, recorded, setup, 1.0));
  for (int s = 0; s < cfg.repetitions; ++s) {
    const SegmentRecord rec = full_record_segment(cfg.ansatz, omega, setup, cfg.segment_length, cfg.optimizer,
                                                  cfg.fidelity_floor, cfg.fidelity_loss);
    omega = rec.omega;
    out.evaluations += rec.evaluations;
    out.filter_steps += cfg.segment_length;
    recorded = ansatz_apply(cfg.ansatz, omega, reference_zero(cfg.ansatz));
    out.trace.rows.push_back(recorded_row(out.filter_steps, recorded, setup, rec.segment_prob, s, rec.fidelity));
  }
  out.omega = omega;
  out.final_energy = expectation(setup.original_op, recorded);
  out.trace.final_state = std::move(recorded);
  return out;
}

double threshold_correlation(double m, double c_b) {
  if (!(std::abs(m) <= 1.0 + 1e-9)) throw Error(ErrorCode::InvalidArgument, "correlation outside [-1, 1]");
  if (!(c_b > 0.0)) throw Error(ErrorCode::InvalidArgument, "C_B must be > 0");
  if (m >= c_b) return 1.0;
  if (m <= -c_b) return -1.0;
  return m;
}

std::vector<double> threshold_correlations(const std::vector<double>& m, double c_b) {
  std::vector<double> out;
  out.reserve(m.size());
  for (double v : m) out.push_back(threshold_correlation(v, c_b));
  return out;
}

std::vector<std::size_t> sample_terms(std::size_t total, std::size_t count, std::uint64_t seed) {
  if (count > total) throw Error(ErrorCode::InvalidArgument, "cannot sample more terms than exist");
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

namespace {

// Expectations of the chosen terms' strings on a normalized state.
class TermMeter {
 public:
  TermMeter(const Hamiltonian& h, std::vector<std::size_t> which) : which_(std::move(which)) {
    for (auto i : which_) strings_.push_back(h.terms()[i].string);
    diagonal_ = true;
    for (const auto& p : strings_) diagonal_ = diagonal_ && p.is_diagonal();
  }

  std::vector<double> measure(const StateVector& s) const {
    std::vector<double> out(strings_.size());
    if (diagonal_) {
      const Eigen::VectorXd probs = s.amplitudes().cwiseAbs2() / s.squared_norm();
      for (std::size_t k = 0; k < strings_.size(); ++k) {
        const std::uint64_t z = strings_[k].z_mask();
        double acc = 0.0;
        for (Eigen::Index b = 0; b < probs.size(); ++b) {
          acc += (std::popcount(static_cast<std::uint64_t>(b) & z) & 1) ? -probs[b] : probs[b];
        }
        out[k] = acc;
      }
    } else {
      for (std::size_t k = 0; k < strings_.size(); ++k) out[k] = pauli_expectation(strings_[k], s);
    }
    return out;
  }

 private:
  std::vector<std::size_t> which_;
  std::vector<PauliString> strings_;
  bool diagonal_ = true;
};

double match_loss(const std::vector<double>& got, const std::vector<double>& want, MatchLoss kind) {
  double acc = 0.0;
  for (std::size_t k = 0; k < got.size(); ++k) {
    const double d = got[k] - want[k];
    acc += kind == MatchLoss::Squared ? d * d : std::abs(d);
  }
  return acc;
}

// Shared loop of the two reduced modes; `pick` chooses term indices and the
// C_r value reported for repetition s, `revise` maps measured to target values.
template <typename Pick, typename Revise>
RecordingResult reduced_loop(const FilterSetup& setup, const RecordingConfig& cfg, Pick pick, Revise revise) {
  RecordingResult out;
  const AnsatzSpec& spec = cfg.ansatz;
  if (spec.n_qubits != setup.n_qubits()) throw Error(ErrorCode::DimensionMismatch, "ansatz width vs Hamiltonian");
  ParamVector omega = ParamVector::Zero(spec.num_params());
  StateVector recorded = ansatz_apply(spec, omega, reference_zero(spec));
  out.trace.rows.push_back(measure_row(0, recorded, setup, 1.0));

  for (int s = 0; s < cfg.repetitions; ++s) {
    StateVector filtered = filter_steps(recorded, setup, cfg.segment_length);
    const double prob = filtered.squared_norm() / recorded.squared_norm();
    const auto [which, c_r] = pick(s);
    const TermMeter meter(setup.original, which);
    const std::vector<double> target = revise(meter.measure(filtered));

    const Objective objective = [&](const ParamVector& d) {
      return match_loss(meter.measure(ansatz_apply(spec, omega + d, reference_zero(spec))), target, cfg.match_loss);
    };
    const OptimizeResult r = minimize(objective, ParamVector::Zero(omega.size()), cfg.optimizer);
    omega += r.x;
    out.evaluations += r.evaluations;
    out.filter_steps += cfg.segment_length;
    recorded = ansatz_apply(spec, omega, reference_zero(spec));
    TraceRow row = recorded_row(out.filter_steps, recorded, setup, prob, s, r.f);
    row.c_r = c_r;
    out.trace.rows.push_back(row);
  }
  out.omega = omega;
  out.final_energy = expectation(setup.original_op, recorded);
  out.trace.final_state = std::move(recorded);
  return out;
}

}  // namespace

RecordingResult reduced_record_co(const FilterSetup& setup, const RecordingConfig& cfg) {
  cfg.validate();
  if (cfg.mode != RecordMode::ReducedCO) throw Error(ErrorCode::ConfigError, "reduced_record_co needs mode ReducedCO");
  if (!setup.original.is_diagonal()) throw Error(ErrorCode::NonDiagonalHamiltonian, "CO recording needs a Z-only Hamiltonian");
  std::vector<std::size_t> all(setup.original.num_terms());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return reduced_loop(
      setup, cfg, [&](int) { return std::pair{all, 1.0}; },
      [&](const std::vector<double>& m) { return threshold_correlations(m, cfg.c_b); });
}

RecordingResult reduced_record_mb(const FilterSetup& setup, const RecordingConfig& cfg) {
  cfg.validate();
  if (cfg.mode != RecordMode::ReducedMB) throw Error(ErrorCode::ConfigError, "reduced_record_mb needs mode ReducedMB");
  const std::size_t n_terms = setup.original.num_terms();
  return reduced_loop(
      setup, cfg,
      [&](int s) {
        const double c_r = cfg.c_r_schedule[static_cast<std::size_t>(s)];
        const auto count = static_cast<std::size_t>(std::ceil(c_r * static_cast<double>(n_terms) - 1e-9));
        std::vector<std::size_t> which = sample_terms(n_terms, count, cfg.seed * 1000003ULL + static_cast<std::uint64_t>(s));
        std::sort(which.begin(), which.end());
        return std::pair{which, c_r};
      },
      [](const std::vector<double>& m) { return m; });
}

}  // namespace nhq
