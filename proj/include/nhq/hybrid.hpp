#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nhq/ansatz.hpp"
#include "nhq/filter.hpp"
#include "nhq/optimize.hpp"

namespace nhq {

struct HybridResult {
  EvolutionTrace trace;
  std::vector<ParamVector> block_params;  // one per committed block (one total for UUCC)
  double initial_energy = 0.0;            // energy of psi0 before any block
  int evaluations = 0;
  bool exhausted = false;
};

/// Alternate a fresh variational block and a filter step M times. Each block
/// starts at zero parameters and is optimized alone for the post-selected
/// energy after the block and the following filter step, then frozen.
HybridResult hybrid_cucu(const StateVector& psi0, const FilterSetup& setup, const AnsatzSpec& block,
                         const FilterConfig& cfg, const OptimizerConfig& opt);

/// One front block optimized for energy, then M plain filter steps. Row 0 is
/// the state after the front block.
HybridResult hybrid_uucc(const StateVector& psi0, const FilterSetup& setup, const AnsatzSpec& front,
                         const FilterConfig& cfg, const OptimizerConfig& opt);

struct ResourceInputs {
  long n_step = 0;
  long n_u = 0;
  long n_h = 0;
  long n_para = 0;
  // When set, n_para is shown as "(n_step*para_per_step)", as for QAOA.
  std::optional<long> para_per_step;
  long n_ite = 1;
  long n_shots = 1;
};

struct ResourceEstimate {
  long n_depth = 0;
  long n_meas = 0;
  std::string depth_cell;  // "4*15 = 60"
  std::string meas_cell;   // "5*(4*2) = 40"
};

/// N_depth = N_step N_U and N_meas = N_h N_para N_ite N_shots. Unit N_ite and
/// N_shots factors are left out of the rendered cell.
ResourceEstimate resource_estimate(const ResourceInputs& in);

/// Number of measurement bases: one for all diagonal terms plus one per
/// remaining term.
long measurement_bases(const Hamiltonian& h);

}  // namespace nhq
