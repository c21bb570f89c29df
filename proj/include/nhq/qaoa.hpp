#pragma once

#include <optional>

#include "nhq/filter.hpp"
#include "nhq/optimize.hpp"

namespace nhq {

struct QaoaConfig {
  int depth = 1;
  std::optional<ParamVector> initial;  // [gamma_1..gamma_p, beta_1..beta_p]; default is a linear ramp
  OptimizerConfig optimizer;
  int starts = 1;  // extra starts perturb the ramp with the optimizer seed

  void validate() const;
};

/// prod_k exp(-i beta_k sum X) exp(-i gamma_k H) psi0. The problem unitary is
/// exact for the diagonal part of H; non-diagonal terms follow one at a time
/// in canonical order.
StateVector qaoa_state(const Hamiltonian& h, const ParamVector& params, const StateVector& psi0);

/// gamma ramps up and beta ramps down across the layers.
ParamVector qaoa_ramp(int depth);

struct QaoaResult {
  ParamVector params;
  double energy = 0.0;
  EvolutionTrace trace;  // row k: energy after the first k optimized layers
  int evaluations = 0;
  bool exhausted = false;
};

/// Optimize a depth-p circuit from |+...+> (or psi0).
QaoaResult qaoa_run(const Hamiltonian& h, const QaoaConfig& cfg, const std::optional<StateVector>& psi0 = std::nullopt);

/// Optimized energy for each depth 1..max_depth; row p of the trace is the
/// depth-p optimum, row 0 the initial state.
QaoaResult qaoa_sweep(const Hamiltonian& h, int max_depth, const QaoaConfig& cfg,
                      const std::optional<StateVector>& psi0 = std::nullopt);

}  // namespace nhq
