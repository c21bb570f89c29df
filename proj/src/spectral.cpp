#include "nhq/spectral.hpp"

#include <cmath>
#include <numbers>

namespace nhq {

Hamiltonian tfim_hamiltonian(int n, double coupling, double field, bool periodic) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "TFIM needs at least 2 sites");
  std::vector<PauliTerm> terms;
  const int bonds = (periodic && n > 2) ? n : n - 1;
  for (int i = 0; i < bonds; ++i) {
    PauliString zz(n);
    zz.set(i, Pauli::Z);
    zz.set((i + 1) % n, Pauli::Z);
    terms.push_back({coupling, zz});
  }
  for (int i = 0; i < n; ++i) terms.push_back({field, PauliString::single(n, i, Pauli::X)});
  return Hamiltonian(n, std::move(terms));
}

namespace {

// <row|sigma|col> for a single-qubit Pauli.
cplx pauli_entry(Pauli p, int row, int col) {
  const cplx i{0.0, 1.0};
  switch (p) {
    case Pauli::I: return row == col ? 1.0 : 0.0;
    case Pauli::X: return row != col ? 1.0 : 0.0;
    case Pauli::Y: return row == col ? cplx{0.0} : (row == 1 ? i : -i);
    case Pauli::Z: return row != col ? cplx{0.0} : (row == 0 ? 1.0 : -1.0);
  }
  return 0.0;
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const Hamiltonian& h) {
  const int n = h.n_qubits();
  if (n > kMaxDenseQubits) throw Error(ErrorCode::TooLarge, "dense matrix limited to 14 qubits");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim) * h.identity_offset();
  for (const auto& t : h.terms()) {
    std::vector<Pauli> letters(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) letters[static_cast<std::size_t>(q)] = t.string.at(q);
    for (Eigen::Index col = 0; col < dim; ++col) {
      // Each Pauli factor maps a column to exactly one row.
      Eigen::Index row = 0;
      cplx value = t.coeff;
      for (int q = 0; q < n; ++q) {
        const int c = static_cast<int>((col >> q) & 1);
        const Pauli p = letters[static_cast<std::size_t>(q)];
        const int r = (p == Pauli::X || p == Pauli::Y) ? 1 - c : c;
        value *= pauli_entry(p, r, c);
        row |= static_cast<Eigen::Index>(r) << q;
      }
      m(row, col) += value;
    }
  }
  return m;
}

SpectralInfo spectral_info(const Hamiltonian& h) {
  const int n = h.n_qubits();
  if (n > kMaxDenseQubits) throw Error(ErrorCode::TooLarge, "spectral_info limited to 14 qubits");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "empty register");
  const Eigen::Index dim = Eigen::Index{1} << n;

  SpectralInfo info;
  info.n_qubits = n;
  Eigen::MatrixXcd vectors;

  if (h.is_diagonal()) {
    Eigen::VectorXd diag(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
      double e = h.identity_offset();
      for (const auto& t : h.terms()) e += t.coeff * t.string.phase(static_cast<std::uint64_t>(b)).real();
      diag[b] = e;
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    for (Eigen::Index b = 0; b < dim; ++b) order[static_cast<std::size_t>(b)] = b;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return diag[a] < diag[b]; });
    info.eigenvalues.resize(dim);
    vectors = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      info.eigenvalues[k] = diag[order[static_cast<std::size_t>(k)]];
      vectors(order[static_cast<std::size_t>(k)], k) = 1.0;
    }
  } else {
    const Eigen::MatrixXcd m = dense_matrix(h);
    if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real());
      if (es.info() != Eigen::Success) throw Error(ErrorCode::NonConvergence, "dense eigensolver failed");
      info.eigenvalues = es.eigenvalues();
      vectors = es.eigenvectors().cast<cplx>();
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
      if (es.info() != Eigen::Success) throw Error(ErrorCode::NonConvergence, "dense eigensolver failed");
      info.eigenvalues = es.eigenvalues();
      vectors = es.eigenvectors();
    }
  }

  const auto& ev = info.eigenvalues;
  info.e_min = ev[0];
  info.e_max = ev[dim - 1];
  info.ground_energy = ev[0];
  int degeneracy = 1;
  while (degeneracy < dim && ev[degeneracy] - ev[0] < SpectralInfo::kDegeneracyTol) ++degeneracy;
  info.ground_degeneracy = degeneracy;
  info.gap = dim > 1 ? ev[1] - ev[0] : 0.0;
  if (info.gap < SpectralInfo::kDegeneracyTol) info.gap = 0.0;
  info.excitation_gap = degeneracy < dim ? ev[degeneracy] - ev[0] : 0.0;
  info.ground_space = vectors.leftCols(degeneracy);
  Amplitudes g = vectors.col(0);
  g.normalize();
  info.ground_state = StateVector(n, std::move(g));
  return info;
}

namespace {

ShiftedProblem make_shift(const Hamiltonian& h, double e_min, double e_max, double margin) {
  if (!(margin > 0.0) || !std::isfinite(margin)) throw Error(ErrorCode::InvalidArgument, "shift margin must be > 0");
  ShiftedProblem out;
  out.shift = -e_min + margin;
  out.shifted = h.shifted(out.shift);
  const double top = e_max + out.shift;
  out.dt = (std::numbers::pi / 2.0) / top;
  return out;
}

}  // namespace

ShiftedProblem shift_and_timestep(const Hamiltonian& h, const SpectralInfo& info, double margin) {
  if (info.n_qubits != h.n_qubits()) throw Error(ErrorCode::DimensionMismatch, "spectral info belongs to another register");
  return make_shift(h, info.e_min, info.e_max, margin);
}

ShiftedProblem shift_and_timestep_bound(const Hamiltonian& h, double margin) {
  const double l1 = h.coefficient_l1();
  return make_shift(h, h.identity_offset() - l1, h.identity_offset() + l1, margin);
}

}  // namespace nhq
