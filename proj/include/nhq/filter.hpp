#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nhq/pauli.hpp"
#include "nhq/spectral.hpp"
#include "nhq/statevector.hpp"

namespace nhq {

struct FilterConfig {
  std::optional<double> dt;  // default: dt* from the shifted spectrum
  int max_steps = 1;
  double margin = 1e-3;
  double eta = 0.1;
  // Stop once |dE| < convergence_tol for three consecutive steps.
  bool stop_on_convergence = false;
  double convergence_tol = 1e-8;

  void validate() const;
};

/// Everything a filter driver needs about one problem. Energies are always
/// measured with `original`; the filter itself runs on `shifted`.
struct FilterSetup {
  Hamiltonian original;
  Hamiltonian shifted;
  double shift = 0.0;
  double dt = 0.0;
  std::optional<SpectralInfo> spectrum;  // absent above kMaxDenseQubits
  PauliSumOperator original_op;
  PauliSumOperator shifted_op;

  int n_qubits() const { return original.n_qubits(); }
};

/// Shift by the exact spectrum when it is small enough to diagonalize,
/// otherwise by the Gershgorin bound.
FilterSetup prepare_filter(const Hamiltonian& h, const FilterConfig& cfg);
/// Explicit shift and timestep, no safety checks on positivity.
FilterSetup prepare_filter(const Hamiltonian& h, double shift, double dt);

struct TraceRow {
  int step = 0;
  double energy = 0.0;
  double norm = 0.0;
  double success_prob = 0.0;
  double ground_fidelity = 0.0;  // NaN when no spectrum is available
  std::optional<int> segment_index;
  std::optional<double> record_metric;
  std::optional<double> c_r;
};

struct EvolutionTrace {
  std::vector<TraceRow> rows;
  StateVector final_state;  // unnormalized for filter runs
  bool converged = false;

  /// First step whose relative error against e_ground is below tol.
  std::optional<int> steps_to(double tol, double e_ground) const;
};

/// |E - E_g| / |E_g|, or |E| when E_g is zero.
double relative_error(double energy, double e_ground);

struct StepResult {
  StateVector filtered;  // cos(H' dt) state, unnormalized
  double success_prob = 0.0;
};

/// One non-Hermitian block followed by post-selection of the recycled
/// ancilla in |0>. Throws ZeroNorm if the survivor norm drops below 1e-14.
StepResult nh_step(const StateVector& state, const PauliSumOperator& shifted, double dt);

/// Energy, norm and ground fidelity of a (possibly unnormalized) state.
TraceRow measure_row(int step, const StateVector& state, const FilterSetup& setup, double success_prob);

/// M filter steps from psi0 (normalized); M + 1 rows including step 0.
EvolutionTrace nh_evolve(const StateVector& psi0, const FilterSetup& setup, const FilterConfig& cfg);
EvolutionTrace nh_evolve(const StateVector& psi0, const Hamiltonian& h, const FilterConfig& cfg);

inline constexpr int kMaxExplicitAncillas = 8;

/// System plus up to eight ancillas, held as one joint state. Ancilla k
/// (0-based) is qubit n_system + k, so system gates act on the joint state
/// unchanged. Block k applies exp(-i H' (x) Y_k dt) exactly.
class AncillaRegister {
 public:
  AncillaRegister(const StateVector& system, const Hamiltonian& shifted, double dt, int n_ancillas);

  /// Next block on the next fresh ancilla.
  void apply_block();
  void apply_system_gates(const std::vector<Gate>& gates);

  int n_system() const { return n_system_; }
  int n_ancillas() const { return n_ancillas_; }
  int blocks_applied() const { return blocks_; }
  const StateVector& joint() const { return joint_; }

  /// System amplitudes with every ancilla in |0>, unnormalized.
  StateVector project_all_zero() const;

  /// <phi| O (x) Z_S |phi> for ancilla subset S (bit k = ancilla k), where O
  /// is `system_op` or the identity when null. Not normalized.
  double z_correlator(std::uint64_t ancilla_subset, const PauliSumOperator* system_op) const;

 private:
  int n_system_;
  int n_ancillas_;
  int blocks_ = 0;
  double dt_;
  Hamiltonian shifted_;
  StateVector joint_;
};

/// Post-processed energy from binomially weighted ancilla correlators
/// <phi_i| H Z_1...Z_i |phi_i>, with each phi_i built in explicit-ancilla
/// mode. Valid for pure filter runs only. M <= 8.
double postprocess_energy(const StateVector& psi0, const FilterSetup& setup, int m);

/// <phi_M| H P |phi_M> / <phi_M| P |phi_M> with P the all-ancilla |0>
/// projector. M <= 8.
double projector_energy(const StateVector& psi0, const FilterSetup& setup, int m);

/// Largest residual over the time-translation identities: for every ancilla
/// subset S of size k, <phi_M| O Z_S |phi_M> must equal <phi_k| O Z_1..Z_k |phi_k>
/// with O in {I, H}. `interleave` is applied to the system after every block
/// except the last; a nonempty block breaks the identities. M <= 6.
double time_translation_check(const StateVector& psi0, const FilterSetup& setup, int m,
                              const std::vector<Gate>& interleave = {});

/// ceil(ln^2(1/(chi eps)) / gap^2), the asymptotic step count with unit
/// constant. A reporting estimate only.
long required_steps_estimate(double gap, double chi, double eps);

}  // namespace nhq
