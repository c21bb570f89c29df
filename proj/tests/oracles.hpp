// Independent reference computations shared by the unit tests.
#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "nhq/pauli.hpp"
#include "nhq/spectral.hpp"
#include "nhq/statevector.hpp"

namespace oracle {

using nhq::cplx;

inline nhq::Hamiltonian random_hamiltonian(std::mt19937_64& rng, int n, int n_terms, double scale = 1.0) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::uniform_real_distribution<double> coeff(-scale, scale);
  std::vector<nhq::PauliTerm> terms;
  for (int t = 0; t < n_terms; ++t) {
    nhq::PauliString p(n);
    for (int q = 0; q < n; ++q) p.set(q, static_cast<nhq::Pauli>(letter(rng)));
    terms.push_back({coeff(rng), p});
  }
  return nhq::Hamiltonian(n, terms, coeff(rng));
}

inline nhq::StateVector random_state(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd a(Eigen::Index{1} << n);
  for (auto& x : a) x = cplx(g(rng), g(rng));
  a.normalize();
  return nhq::StateVector(n, a);
}

// f(H) v via dense eigendecomposition.
template <typename F>
Eigen::VectorXcd apply_function(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& v, F f) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * v;
  Eigen::VectorXcd scaled(coeffs.size());
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) scaled[k] = f(es.eigenvalues()[k]) * coeffs[k];
  return es.eigenvectors() * scaled;
}

// Joint matrix H (x) Y with the ancilla as the most significant qubit.
inline Eigen::MatrixXcd h_tensor_y(const Eigen::MatrixXcd& h) {
  const Eigen::Index d = h.rows();
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  k.block(0, d, d, d) = cplx(0, -1) * h;
  k.block(d, 0, d, d) = cplx(0, 1) * h;
  return k;
}

// exp(-i H (x) Y dt) |psi>|0>, then keep the ancilla-0 half.
inline Eigen::VectorXcd explicit_ancilla_step(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi, double dt) {
  const Eigen::Index d = h.rows();
  Eigen::VectorXcd joint = Eigen::VectorXcd::Zero(2 * d);
  joint.head(d) = psi;
  const Eigen::VectorXcd out = apply_function(h_tensor_y(h), joint, [dt](double e) { return std::exp(cplx(0, -e * dt)); });
  return out.head(d);
}

inline double max_abs(const Eigen::VectorXcd& a) { return a.cwiseAbs().maxCoeff(); }

// <H> after exp(-i beta sum X) exp(-i gamma H) |+...+>, all dense.
inline double qaoa1_dense(const nhq::Hamiltonian& h, double gamma, double beta) {
  const Eigen::MatrixXcd hd = nhq::dense_matrix(h);
  std::vector<nhq::PauliTerm> xs;
  for (int q = 0; q < h.n_qubits(); ++q) {
    nhq::PauliString p(h.n_qubits());
    p.set(q, nhq::Pauli::X);
    xs.push_back({1.0, p});
  }
  const Eigen::MatrixXcd mix = nhq::dense_matrix(nhq::Hamiltonian(h.n_qubits(), xs));
  const Eigen::Index d = hd.rows();
  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  v = apply_function(hd, v, [gamma](double e) { return std::exp(cplx(0, -gamma * e)); });
  v = apply_function(mix, v, [beta](double e) { return std::exp(cplx(0, -beta * e)); });
  return (v.adjoint() * hd * v)(0, 0).real();
}

struct GridOptimum {
  double energy, gamma, beta;
};

// 50x50 scan of [0, pi)^2, then a 50x50 scan of the cells around the best point.
inline GridOptimum qaoa1_grid_scan(const nhq::Hamiltonian& h) {
  constexpr double pi = 3.14159265358979323846;
  GridOptimum best{1e300, 0, 0};
  const double step = pi / 50;
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double e = qaoa1_dense(h, i * step, j * step);
      if (e < best.energy) best = {e, i * step, j * step};
    }
  }
  const double fine = 2 * step / 50;
  const double g0 = best.gamma - step, b0 = best.beta - step;
  for (int i = 0; i <= 50; ++i) {
    for (int j = 0; j <= 50; ++j) {
      const double e = qaoa1_dense(h, g0 + i * fine, b0 + j * fine);
      if (e < best.energy) best = {e, g0 + i * fine, b0 + j * fine};
    }
  }
  return best;
}

}  // namespace oracle
