#pragma once

#include <cstdint>
#include <vector>

#include "nhq/ansatz.hpp"
#include "nhq/filter.hpp"
#include "nhq/optimize.hpp"

namespace nhq {

enum class RecordMode { Full, ReducedCO, ReducedMB };

/// Loss for the reduced modes: sum of squared or absolute deviations.
enum class MatchLoss { Squared, Absolute };

/// Full mode: the global fidelity, or the per-qubit marginal loss
/// sum_q (1 - <P0_q>) / n evaluated on V(omega)^dagger |target>.
enum class FidelityLoss { Global, Local };

/// The recorded state is always V(omega)|0...0>, starting from omega = 0.
struct RecordingConfig {
  int segment_length = 1;  // C
  int repetitions = 1;     // N_rep
  AnsatzSpec ansatz;
  OptimizerConfig optimizer;
  RecordMode mode = RecordMode::Full;
  double c_b = 0.5;                 // ReducedCO
  std::vector<double> c_r_schedule; // ReducedMB, one entry per repetition
  double eta = 0.1;
  MatchLoss match_loss = MatchLoss::Squared;
  FidelityLoss fidelity_loss = FidelityLoss::Global;
  double fidelity_floor = 0.9;
  std::uint64_t seed = 0;  // ReducedMB sampling

  void validate() const;
};

struct SegmentLength {
  int length = 1;
  bool warning = false;   // even one step violated eta
  bool capped = false;    // the cap was reached first
};

/// Largest C with ||cos^C(H' dt) psi0|| > eta, found by stepping; at least 1.
SegmentLength segment_length_for_eta(const StateVector& psi0, const FilterSetup& setup, double eta, int cap = 10000);

struct SegmentRecord {
  ParamVector omega;
  double fidelity = 0.0;      // |<target|V(omega)|0>|^2
  double segment_prob = 0.0;  // ||cos^C V(omega_old)|0>||^2
  double loss = 0.0;
  int evaluations = 0;
};

/// Record C filter steps applied to V(omega)|0> back into the ansatz, starting
/// the search at omega. Throws FidelityBelowFloor under `floor`.
SegmentRecord full_record_segment(const AnsatzSpec& spec, const ParamVector& omega, const FilterSetup& setup, int c,
                                  const OptimizerConfig& opt, double floor = 0.9,
                                  FidelityLoss loss = FidelityLoss::Global);

/// The same fidelity by projective measurement in explicit-ancilla mode:
/// <Psi|P_A P_S|Psi> / <Psi|P_A|Psi> with Psi = V(new)^dagger U_NH^C V(old)|0>|0>,
/// P_A the ancilla |0> projector and P_S = |0...0><0...0|. C <= 8.
double record_fidelity_projector(const AnsatzSpec& spec, const ParamVector& old_omega, const ParamVector& new_omega,
                                 const FilterSetup& setup, int c);

/// |<target|V(omega)|0>|^2 / ||target||^2
double record_fidelity(const AnsatzSpec& spec, const ParamVector& omega, const StateVector& target);

struct RecordingResult {
  EvolutionTrace trace;  // row per commit, at cumulative filter step
  ParamVector omega;
  double final_energy = 0.0;
  int filter_steps = 0;
  int evaluations = 0;
};

RecordingResult full_record_run(const FilterSetup& setup, const RecordingConfig& cfg);

/// M' = -1 if M <= -C_B, +1 if M >= C_B, else M. Inputs must satisfy |M| <= 1.
std::vector<double> threshold_correlations(const std::vector<double>& m, double c_b);
double threshold_correlation(double m, double c_b);

/// Requires a diagonal Hamiltonian (NonDiagonalHamiltonian otherwise).
RecordingResult reduced_record_co(const FilterSetup& setup, const RecordingConfig& cfg);

/// Samples ceil(C_r N) of the N terms per repetition, without replacement.
RecordingResult reduced_record_mb(const FilterSetup& setup, const RecordingConfig& cfg);

/// Indices of `count` distinct terms out of `total`, partial Fisher-Yates.
std::vector<std::size_t> sample_terms(std::size_t total, std::size_t count, std::uint64_t seed);

}  // namespace nhq
