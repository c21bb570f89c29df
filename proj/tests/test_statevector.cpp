#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nhq/spectral.hpp"
#include "nhq/statevector.hpp"
#include "oracles.hpp"

using namespace nhq;

TEST_CASE("state construction") {
  auto z = StateVector::zero(2);
  CHECK(z[0] == cplx(1.0));
  CHECK(z.squared_norm() == doctest::Approx(1.0));
  auto p = StateVector::plus(2);
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(p[k].real() == doctest::Approx(0.5));
  for (int n = 1; n <= 6; ++n) {
    CHECK(std::abs(overlap(StateVector::plus(n), StateVector::zero(n))) == doctest::Approx(std::pow(2.0, -n / 2.0)));
  }
  CHECK_THROWS_AS(StateVector(0), Error);
  CHECK_THROWS_AS(StateVector(27), Error);
  Amplitudes zero = Amplitudes::Zero(2);
  StateVector dead(1, zero);
  CHECK_THROWS_AS(dead.normalize(), Error);
}

TEST_CASE("gates") {
  auto s = StateVector::zero(1);
  apply_gate(s, Gate::h(0));
  CHECK(s[0].real() == doctest::Approx(M_SQRT1_2));
  CHECK(s[1].real() == doctest::Approx(M_SQRT1_2));

  std::mt19937_64 rng(1);
  auto r = oracle::random_state(rng, 3);
  auto copy = r;
  apply_gate(copy, Gate::rz(1, 0.7));
  apply_gate(copy, Gate::rz(1, -0.7));
  CHECK(oracle::max_abs(copy.amplitudes() - r.amplitudes()) < 1e-12);

  auto z0 = StateVector::zero(1);
  apply_gate(z0, Gate::pauli_rotation(PauliString::parse("Z"), 0.9));
  CHECK(std::abs(z0[0] - std::exp(cplx(0, -0.45))) < 1e-12);

  CHECK_THROWS_AS(apply_gate(copy, Gate::rx(3, 0.1)), Error);
  CHECK_THROWS_AS(apply_gate(copy, Gate::cnot(1, 1)), Error);
}

TEST_CASE("gates are unitary") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ang(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = oracle::random_state(rng, 4);
    const std::vector<Gate> gates{Gate::h(trial % 4), Gate::rx(1, ang(rng)), Gate::ry(2, ang(rng)), Gate::rz(3, ang(rng)),
                                  Gate::cnot(0, 3), Gate::pauli_rotation(PauliString::parse("XYZI"), ang(rng))};
    for (const auto& g : gates) {
      apply_gate(s, g);
      CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("pauli rotation matches the dense exponential") {
  std::mt19937_64 rng(9);
  auto p = PauliString::parse("YXZ");
  auto m = dense_matrix(Hamiltonian(3, {{1.0, p}}));
  auto s = oracle::random_state(rng, 3);
  auto expect = oracle::apply_function(m, s.amplitudes(), [](double e) { return std::exp(cplx(0, -0.6 * e)); });
  apply_gate(s, Gate::pauli_rotation(p, 1.2));
  CHECK(oracle::max_abs(s.amplitudes() - expect) < 1e-12);
}

TEST_CASE("expectations") {
  Hamiltonian z(1, {{1.0, PauliString::parse("Z")}});
  CHECK(expectation(z, StateVector::zero(1)) == doctest::Approx(1.0));
  CHECK(expectation(z, StateVector::plus(1)) == doctest::Approx(0.0));
  CHECK(pauli_expectation(PauliString::parse("ZZ"), StateVector::zero(2)) == doctest::Approx(1.0));

  auto bell = StateVector::zero(2);
  apply_gate(bell, Gate::h(0));
  apply_gate(bell, Gate::cnot(0, 1));
  CHECK(pauli_expectation(PauliString::parse("XX"), bell) == doctest::Approx(1.0));

  const double j = 1.0 / std::sqrt(2.0);
  auto tfim = tfim_hamiltonian(4, j, j, true);
  auto info = spectral_info(tfim);
  CHECK(std::abs(expectation(tfim, info.ground_state) - info.ground_energy) < 1e-9);

  // Unnormalized input is normalized internally.
  auto half = StateVector::zero(1);
  half.amplitudes() *= 0.1;
  CHECK(expectation(z, half) == doctest::Approx(1.0));
  CHECK_THROWS_AS(expectation(z, StateVector(1, Amplitudes::Zero(2))), Error);
}

TEST_CASE("cos and sin of H") {
  const double dt = 0.4;
  Hamiltonian z(1, {{1.0, PauliString::parse("Z")}});
  auto cs = apply_cos_sin(z, dt, StateVector::zero(1));
  CHECK(cs.cos_part[0].real() == doctest::Approx(std::cos(dt)));
  CHECK(cs.sin_part[0].real() == doctest::Approx(std::sin(dt)));

  auto plus = apply_cos_sin(z, dt, StateVector::plus(1));
  CHECK(plus.cos_part[0].real() == doctest::Approx(std::cos(dt) * M_SQRT1_2));
  CHECK(plus.cos_part[1].real() == doctest::Approx(std::cos(dt) * M_SQRT1_2));
  CHECK(plus.sin_part[0].real() == doctest::Approx(std::sin(dt) * M_SQRT1_2));
  CHECK(plus.sin_part[1].real() == doctest::Approx(-std::sin(dt) * M_SQRT1_2));

  // Analytic Z expectation on the filtered two-level state; |1> is the low level.
  Hamiltonian two(1, {{1.0, PauliString::parse("Z")}}, 2.0);
  auto f = apply_cos_sin(two, dt, StateVector::plus(1)).cos_part;
  const double c1 = std::cos(dt) * std::cos(dt), c3 = std::cos(3 * dt) * std::cos(3 * dt);
  CHECK(pauli_expectation(PauliString::parse("Z"), f) == doctest::Approx((c3 - c1) / (c1 + c3)));

  Hamiltonian big(2, {{2.0, PauliString::parse("XI")}, {2.0, PauliString::parse("ZZ")}});
  CHECK_THROWS_AS(apply_cos_sin(big, 1.0, StateVector::zero(2)), Error);
  CHECK_THROWS_AS(apply_cos_sin(z, -0.1, StateVector::zero(1)), Error);
}

TEST_CASE("cos and sin match dense functional calculus") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    auto h = oracle::random_hamiltonian(rng, 4, 10);
    auto psi = oracle::random_state(rng, 4);
    const double dt = (trial == 0) ? 0.1 : std::min(0.1 + 0.05 * trial, M_PI / h.coefficient_l1());
    auto cs = apply_cos_sin(h, dt, psi);
    auto m = dense_matrix(h);
    auto c = oracle::apply_function(m, psi.amplitudes(), [dt](double e) { return std::cos(e * dt); });
    auto s = oracle::apply_function(m, psi.amplitudes(), [dt](double e) { return std::sin(e * dt); });
    CHECK(oracle::max_abs(cs.cos_part.amplitudes() - c) < 1e-9);
    CHECK(oracle::max_abs(cs.sin_part.amplitudes() - s) < 1e-9);
    CHECK(std::abs(cs.cos_part.squared_norm() + cs.sin_part.squared_norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("cos and sin on eigenvectors") {
  std::mt19937_64 rng(22);
  auto h = oracle::random_hamiltonian(rng, 3, 6);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h));
  const double dt = 0.3;
  for (Eigen::Index k = 0; k < 8; ++k) {
    StateVector v(3, es.eigenvectors().col(k));
    auto cs = apply_cos_sin(h, dt, v);
    const double l = es.eigenvalues()[k];
    CHECK(oracle::max_abs(cs.cos_part.amplitudes() - std::cos(l * dt) * v.amplitudes()) < 1e-10);
    CHECK(oracle::max_abs(cs.sin_part.amplitudes() - std::sin(l * dt) * v.amplitudes()) < 1e-10);
  }
}

TEST_CASE("evolve matches the dense exponential") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    auto h = oracle::random_hamiltonian(rng, 3, 7, 1.5);
    auto psi = oracle::random_state(rng, 3);
    const double t = 0.3 * (trial + 1);
    auto out = evolve(PauliSumOperator(h), t, psi);
    auto expect = oracle::apply_function(dense_matrix(h), psi.amplitudes(), [t](double e) { return std::exp(cplx(0, -e * t)); });
    CHECK(oracle::max_abs(out.amplitudes() - expect) < 1e-10);
  }
}

TEST_CASE("cos^M approaches the Gaussian filter") {
  std::mt19937_64 rng(31);
  const double dt = 0.05;
  for (int trial = 0; trial < 10; ++trial) {
    auto h = oracle::random_hamiltonian(rng, 3, 5);
    auto m = dense_matrix(h);
    const double norm = m.cwiseAbs().colwise().sum().maxCoeff();  // bounds the spectral norm
    if (norm > 2.0) {
      h *= 2.0 / norm;
      m = dense_matrix(h);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    const double hn = es.eigenvalues().cwiseAbs().maxCoeff();
    auto psi = oracle::random_state(rng, 3);
    auto op = PauliSumOperator(h);
    StateVector cur = psi;
    for (int mm = 1; mm <= 20; ++mm) {
      cur = apply_cos_sin(op, dt, cur).cos_part;
      auto gauss = oracle::apply_function(m, psi.amplitudes(), [&](double e) { return std::exp(-mm * (e * dt) * (e * dt) / 2); });
      const double bound = 5.0 * mm * std::pow(hn * dt, 4);
      CHECK((cur.amplitudes() - gauss).norm() <= bound);
    }
  }
}

TEST_CASE("projection") {
  auto pr = project_qubit(StateVector::plus(1), 0, 0);
  CHECK(pr.probability == doctest::Approx(0.5));
  CHECK(pr.projected[0].real() == doctest::Approx(M_SQRT1_2));
  CHECK_FALSE(pr.zero_probability);

  auto one = StateVector::basis(1, 1);
  auto pz = project_qubit(one, 0, 0);
  CHECK(pz.probability == 0.0);
  CHECK(pz.zero_probability);

  auto bell = StateVector::zero(2);
  apply_gate(bell, Gate::h(0));
  apply_gate(bell, Gate::cnot(0, 1));
  auto pb = project_qubit(bell, 0, 1);
  CHECK(pb.probability == doctest::Approx(0.5));
  CHECK(pb.projected[3].real() == doctest::Approx(M_SQRT1_2));

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = oracle::random_state(rng, 3);
    const int q = trial % 3;
    CHECK(project_qubit(s, q, 0).probability + project_qubit(s, q, 1).probability == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fidelity to the ground space") {
  auto h = Hamiltonian(3, {{1.0, PauliString::parse("ZII")}, {1.0, PauliString::parse("IZI")}, {1.0, PauliString::parse("IIZ")}});
  auto info = spectral_info(h);
  CHECK(subspace_fidelity(StateVector::plus(3), info.ground_space) == doctest::Approx(1.0 / 8));
  CHECK(subspace_fidelity(info.ground_state, info.ground_space) == doctest::Approx(1.0));
  CHECK(subspace_fidelity(StateVector::zero(3), info.ground_space) < 1e-12);
  CHECK_THROWS_AS(subspace_fidelity(StateVector::zero(2), info.ground_space), Error);
}

TEST_CASE("amplitude dump round trip") {
  std::mt19937_64 rng(8);
  auto s = oracle::random_state(rng, 3);
  std::stringstream buf;
  write_amplitudes(buf, s);
  CHECK(buf.str().substr(0, 5) == "CSKV1");
  CHECK(buf.str().size() == 5 + 4 + 8 * 16);
  auto back = read_amplitudes(buf);
  CHECK(back.amplitudes() == s.amplitudes());
  std::stringstream bad("XXXXX");
  CHECK_THROWS_AS(read_amplitudes(bad), Error);
}
