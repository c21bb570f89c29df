#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nhq/pauli.hpp"
#include "nhq/statevector.hpp"

namespace nhq {

/// 1D transverse-field Ising model J sum Z_i Z_{i+1} + h_x sum X_i.
/// The periodic closing bond is skipped for n = 2, where it would repeat (0,1).
Hamiltonian tfim_hamiltonian(int n, double coupling, double field, bool periodic);

/// Largest register spectral_info will diagonalize densely.
inline constexpr int kMaxDenseQubits = 14;

/// Dense 2^n x 2^n matrix, built entry by entry from the 2x2 Pauli factors.
Eigen::MatrixXcd dense_matrix(const Hamiltonian& h);

struct SpectralInfo {
  static constexpr double kDegeneracyTol = 1e-9;

  int n_qubits = 0;
  Eigen::VectorXd eigenvalues;  // ascending
  double e_min = 0.0;
  double e_max = 0.0;
  double ground_energy = 0.0;
  /// eigenvalues[1] - eigenvalues[0]; zero when the ground level is degenerate.
  double gap = 0.0;
  /// Distance from the ground level to the next distinct level.
  double excitation_gap = 0.0;
  int ground_degeneracy = 1;
  /// Orthonormal basis of the ground eigenspace, one column per vector.
  Eigen::MatrixXcd ground_space;
  StateVector ground_state;
};

/// Exact spectrum by dense diagonalization. Throws TooLarge above kMaxDenseQubits.
SpectralInfo spectral_info(const Hamiltonian& h);

struct ShiftedProblem {
  Hamiltonian shifted;
  double shift = 0.0;
  double dt = 0.0;
};

/// Shift so the smallest eigenvalue sits at `margin` and pick the largest dt
/// with E'_max dt <= pi/2.
ShiftedProblem shift_and_timestep(const Hamiltonian& h, const SpectralInfo& info, double margin = 1e-3);

/// Same, using the Gershgorin interval [offset - l1, offset + l1] instead of
/// the exact spectrum. For registers too large to diagonalize.
ShiftedProblem shift_and_timestep_bound(const Hamiltonian& h, double margin = 1e-3);

}  // namespace nhq
