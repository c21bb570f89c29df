#include <cmath>
#include <random>

#include "doctest.h"
#include "nhq/filter.hpp"
#include "nhq/fixtures.hpp"
#include "oracles.hpp"

using namespace nhq;

namespace {

Hamiltonian two_level() { return Hamiltonian(1, {{1.0, PauliString::parse("Z")}}, 2.0); }

double two_level_energy(int m, double dt) {
  const double a = std::pow(std::cos(dt), 2 * m), b = std::pow(std::cos(3 * dt), 2 * m);
  return (a + 3 * b) / (a + b);
}

}  // namespace

TEST_CASE("two-level filter step") {
  const double dt = 0.3;
  auto op = PauliSumOperator(two_level());
  auto r = nh_step(StateVector::plus(1), op, dt);
  // Z|0> = |0>, so |0> carries eigenvalue 3 and |1> eigenvalue 1.
  CHECK(r.filtered[0].real() == doctest::Approx(std::cos(3 * dt) * M_SQRT1_2));
  CHECK(r.filtered[1].real() == doctest::Approx(std::cos(dt) * M_SQRT1_2));
  const double c1 = std::cos(dt), c3 = std::cos(3 * dt);
  CHECK(r.success_prob == doctest::Approx((c1 * c1 + c3 * c3) / 2));

  auto e = nh_step(StateVector::basis(1, 1), op, dt);
  CHECK(e.success_prob == doctest::Approx(std::cos(dt) * std::cos(dt)));
}

TEST_CASE("two-level filter trace") {
  const double dt = 0.37;
  auto setup = prepare_filter(two_level(), 0.0, dt);
  FilterConfig cfg;
  cfg.max_steps = 30;
  auto trace = nh_evolve(StateVector::plus(1), setup, cfg);
  REQUIRE(trace.rows.size() == 31);
  for (const auto& row : trace.rows) {
    CHECK(std::abs(row.energy - two_level_energy(row.step, dt)) < 1e-10);
    CHECK(std::abs(row.success_prob - row.norm * row.norm) < 1e-12);
  }
  CHECK(trace.rows.back().energy == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("ground state is a fixed point") {
  const double j = 1.0 / std::sqrt(2.0);
  auto h = tfim_hamiltonian(4, j, j, true);
  FilterConfig cfg;
  cfg.max_steps = 10;
  auto setup = prepare_filter(h, cfg);
  auto trace = nh_evolve(setup.spectrum->ground_state, setup, cfg);
  for (const auto& row : trace.rows) {
    CHECK(row.energy == doctest::Approx(setup.spectrum->ground_energy).epsilon(1e-10));
    CHECK(row.ground_fidelity == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("nh_step equals explicit ancilla projection") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    auto h = oracle::random_hamiltonian(rng, 4, 8);
    FilterConfig cfg;
    auto setup = prepare_filter(h, cfg);
    auto psi = oracle::random_state(rng, 4);
    auto step = nh_step(psi, setup.shifted_op, setup.dt);
    auto dense = oracle::explicit_ancilla_step(dense_matrix(setup.shifted), psi.amplitudes(), setup.dt);
    CHECK(oracle::max_abs(step.filtered.amplitudes() - dense) < 1e-10);

    AncillaRegister reg(psi, setup.shifted, setup.dt, 1);
    reg.apply_block();
    CHECK(oracle::max_abs(reg.project_all_zero().amplitudes() - dense) < 1e-10);
  }
}

TEST_CASE("filter properties on random problems") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 4;
    auto h = oracle::random_hamiltonian(rng, n, 3 * n);
    FilterConfig cfg;
    cfg.max_steps = 25;
    auto setup = prepare_filter(h, cfg);
    auto psi = oracle::random_state(rng, n);
    auto trace = nh_evolve(psi, setup, cfg);
    auto m = dense_matrix(setup.shifted);
    const auto& info = *setup.spectrum;
    const double lambda = subspace_fidelity(psi, info.ground_space);
    const double eg = info.ground_energy + setup.shift;
    for (std::size_t k = 1; k < trace.rows.size(); ++k) {
      const auto& row = trace.rows[k];
      CHECK(row.energy <= trace.rows[k - 1].energy + 1e-10);
      auto ref = oracle::apply_function(m, psi.amplitudes(), [&](double e) { return std::pow(std::cos(e * setup.dt), row.step); });
      CHECK(std::abs(row.norm - ref.norm()) < 1e-9);
      CHECK(row.norm >= std::sqrt(lambda) * std::pow(std::cos(eg * setup.dt), row.step) - 1e-12);
    }
  }
}

TEST_CASE("post-processing matches post-selection") {
  auto setup = prepare_filter(two_level(), 0.0, 0.4);
  const double a = std::pow(std::cos(0.4), 4), b = std::pow(std::cos(1.2), 4);
  CHECK(postprocess_energy(StateVector::plus(1), setup, 2) == doctest::Approx((a + 3 * b) / (a + b)).epsilon(1e-12));

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 5; ++trial) {
    auto h = oracle::random_hamiltonian(rng, 3, 6);
    FilterConfig cfg;
    auto s = prepare_filter(h, cfg);
    auto psi = oracle::random_state(rng, 3);
    CHECK(std::abs(postprocess_energy(psi, s, 1) - projector_energy(psi, s, 1)) < 1e-10);
  }

  const double j = 1.0 / std::sqrt(2.0);
  FilterConfig cfg;
  cfg.max_steps = 4;
  auto tfim = prepare_filter(tfim_hamiltonian(4, j, j, true), cfg);
  auto trace = nh_evolve(StateVector::plus(4), tfim, cfg);
  CHECK(std::abs(postprocess_energy(StateVector::plus(4), tfim, 4) - trace.rows[4].energy) < 1e-9);
  CHECK_THROWS_AS(postprocess_energy(StateVector::plus(4), tfim, 9), Error);
}

TEST_CASE("time-translation identities") {
  std::mt19937_64 rng(44);
  auto h = oracle::random_hamiltonian(rng, 3, 6);
  FilterConfig cfg;
  auto s = prepare_filter(h, cfg);
  auto psi = oracle::random_state(rng, 3);
  CHECK(time_translation_check(psi, s, 1) == 0.0);
  CHECK(time_translation_check(psi, s, 3) < 1e-10);
  const std::vector<Gate> block{Gate::rx(0, 1.1), Gate::ry(1, 0.8), Gate::cnot(0, 2)};
  CHECK(time_translation_check(psi, s, 3, block) > 1e-3);
}

TEST_CASE("required steps estimate") {
  CHECK(required_steps_estimate(1.0, 1.0, 0.99) == 1);
  const long base = required_steps_estimate(0.5, 0.1, 0.01);
  const long halved = required_steps_estimate(0.25, 0.1, 0.01);
  CHECK(std::abs(halved - 4 * base) <= 4);
  CHECK(required_steps_estimate(0.5, 0.2, 0.01) <= base);
  CHECK(required_steps_estimate(0.5, 0.1, 0.02) <= base);
  CHECK_THROWS_AS(required_steps_estimate(0.0, 0.1, 0.1), Error);
}

TEST_CASE("five-variable 3-SAT filter run") {
  FilterConfig cfg;
  cfg.max_steps = 72;
  auto setup = prepare_filter(fixture_hamiltonian("sat5"), cfg);
  auto trace = nh_evolve(StateVector::plus(5), setup, cfg);
  CHECK(trace.rows.back().ground_fidelity >= 0.99);
  CHECK(relative_error(trace.rows.back().energy, setup.spectrum->ground_energy) < 0.01);
  for (std::size_t k = 1; k < trace.rows.size(); ++k) CHECK(trace.rows[k].energy <= trace.rows[k - 1].energy + 1e-10);
}

TEST_CASE("config validation") {
  FilterConfig cfg;
  cfg.max_steps = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.max_steps = 1;
  cfg.eta = 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}
