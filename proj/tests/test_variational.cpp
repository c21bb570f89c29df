#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nhq/ansatz.hpp"
#include "nhq/error.hpp"
#include "nhq/fixtures.hpp"
#include "nhq/hybrid.hpp"
#include "nhq/optimize.hpp"
#include "nhq/qaoa.hpp"
#include "nhq/spectral.hpp"
#include "oracles.hpp"

using namespace nhq;

namespace {

constexpr double kPi = std::numbers::pi;

OptimizerConfig with_method(Method m) {
  OptimizerConfig c;
  c.method = m;
  c.max_evals = 5000;
  return c;
}

Hamiltonian z0z1() {
  PauliString p(2);
  p.set(0, Pauli::Z);
  p.set(1, Pauli::Z);
  return Hamiltonian(2, {{1.0, p}});
}

Hamiltonian single_z() {
  PauliString p(1);
  p.set(0, Pauli::Z);
  return Hamiltonian(1, {{1.0, p}});
}

}  // namespace

TEST_CASE("optimizers on simple objectives") {
  for (Method m : {Method::NelderMead, Method::GradientDescent, Method::Bfgs}) {
    CAPTURE(static_cast<int>(m));
    const Objective parabola = [](const ParamVector& x) { return (x[0] - 1.0) * (x[0] - 1.0); };
    const auto r1 = minimize(parabola, ParamVector::Zero(1), with_method(m));
    CHECK(std::abs(r1.x[0] - 1.0) < 1e-4);

    const Objective bowl = [](const ParamVector& x) { return x.squaredNorm(); };
    ParamVector x0(2);
    x0 << 0.7, -1.3;
    const auto r2 = minimize(bowl, x0, with_method(m));
    CHECK(r2.f < 1e-6);
    CHECK(r2.f <= bowl(x0));
  }
}

TEST_CASE("central difference gradient") {
  const Objective s = [](const ParamVector& x) { return std::sin(x[0]); };
  const double h = 1e-3;
  const ParamVector g = central_difference_gradient(s, ParamVector::Zero(1), h);
  CHECK(std::abs(g[0] - 1.0) < h * h);
}

TEST_CASE("optimizer budget and determinism") {
  const Objective rosen = [](const ParamVector& x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  OptimizerConfig c;
  c.max_evals = 30;
  ParamVector x0(2);
  x0 << -1.2, 1.0;
  const auto r = minimize(rosen, x0, c);
  CHECK(r.exhausted);
  CHECK(r.evaluations <= 30);
  CHECK(r.f <= rosen(x0));

  c.max_evals = 400;
  c.seed = 7;
  const auto a = minimize(rosen, x0, c);
  const auto b = minimize(rosen, x0, c);
  CHECK(a.f == b.f);
  CHECK(a.x == b.x);

  OptimizerConfig bad;
  bad.max_evals = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("ansatz semantics") {
  const int n = 3;
  AnsatzSpec zx{n, {RotationLayer{{Axis::Z, Axis::X}, Sharing::PerQubit}}};
  CHECK(zx.num_params() == 6);
  const StateVector zero(n);
  const StateVector same = ansatz_apply(zx, ParamVector::Zero(6), zero);
  CHECK(oracle::max_abs(same.amplitudes() - zero.amplitudes()) < 1e-15);

  AnsatzSpec h{n, {HadamardLayer{}}};
  CHECK(h.num_params() == 0);
  CHECK(oracle::max_abs(ansatz_apply(h, ParamVector(), zero).amplitudes() - StateVector::plus(n).amplitudes()) < 1e-15);

  // Shared angles equal per-qubit angles set to the same value.
  AnsatzSpec shared{n, {HadamardLayer{}, RotationLayer{{Axis::Z, Axis::X, Axis::Z}, Sharing::AllShared}, EntanglerLayer{true}}};
  AnsatzSpec per{n, {HadamardLayer{}, RotationLayer{{Axis::Z, Axis::X, Axis::Z}, Sharing::PerQubit}, EntanglerLayer{true}}};
  ParamVector ps(3);
  ps << 0.3, -1.1, 0.8;
  ParamVector pp(9);
  pp << 0.3, 0.3, 0.3, -1.1, -1.1, -1.1, 0.8, 0.8, 0.8;
  CHECK(oracle::max_abs(ansatz_apply(shared, ps, zero).amplitudes() - ansatz_apply(per, pp, zero).amplitudes()) < 1e-14);

  AnsatzSpec eo{4, {RotationLayer{{Axis::Y}, Sharing::EvenOdd}}};
  CHECK(eo.num_params() == 2);
  CHECK_THROWS_AS(ansatz_apply(per, ps, zero), Error);

  // Inverse circuit undoes the forward one.
  std::mt19937_64 rng(3);
  const StateVector psi = oracle::random_state(rng, n);
  StateVector back = ansatz_apply(per, pp, psi);
  apply_gates(back, inverse_gates(per.gates(pp)));
  CHECK(oracle::max_abs(back.amplitudes() - psi.amplitudes()) < 1e-13);
}

TEST_CASE("ansatz presets") {
  CHECK(ansatz_preset("tfim4", 4).num_params() == 2);
  CHECK(ansatz_preset("tfim8", 8).num_params() == 3);
  CHECK(ansatz_preset("sat5", 5).num_params() == 15);
  CHECK(ansatz_preset("sat8", 8).num_params() == 12);
  CHECK(ansatz_preset("none", 5).empty());
  CHECK_THROWS_AS(ansatz_preset("bogus", 4), Error);
  CHECK(recording_ansatz(5, 3).num_params() == 30);
  // Zero parameters give |+...+>.
  const AnsatzSpec rec = recording_ansatz(4, 2);
  CHECK(oracle::max_abs(ansatz_apply(rec, ParamVector::Zero(rec.num_params()), StateVector(4)).amplitudes() -
                        StateVector::plus(4).amplitudes()) < 1e-14);
}

TEST_CASE("qaoa zero angles leave |+...+>") {
  const Hamiltonian h = fixture_hamiltonian("table1");
  const StateVector s = qaoa_state(h, ParamVector::Zero(6), StateVector::plus(5));
  CHECK(std::abs(expectation(h, s)) < 1e-12);
}

TEST_CASE("qaoa p=1 on Z0Z1 matches a grid scan") {
  const Hamiltonian h = z0z1();
  const oracle::GridOptimum best = oracle::qaoa1_grid_scan(h);

  QaoaConfig cfg;
  cfg.depth = 1;
  cfg.starts = 3;
  cfg.optimizer.max_evals = 2000;
  const QaoaResult r = qaoa_run(h, cfg);
  CHECK(std::abs(r.energy - best.energy) < 1e-3);
  CHECK(std::abs(oracle::qaoa1_dense(h, r.params[0], r.params[1]) - r.energy) < 1e-10);
}

TEST_CASE("qaoa phase is 2pi periodic on integer sat Hamiltonians") {
  const Hamiltonian h = fixture_hamiltonian("sat5");
  const StateVector plus = StateVector::plus(5);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int trial = 0; trial < 5; ++trial) {
    ParamVector p(6);
    for (auto& v : p) v = u(rng);
    ParamVector q = p;
    q[1] += 2 * kPi;
    q[2] -= 2 * kPi;
    const StateVector a = qaoa_state(h, p, plus);
    const StateVector b = qaoa_state(h, q, plus);
    CHECK(oracle::max_abs(a.amplitudes() - b.amplitudes()) < 1e-9);
  }
}

TEST_CASE("qaoa reaches tfim-4 at depth 4") {
  const double j = 1.0 / std::sqrt(2.0);
  const Hamiltonian h = tfim_hamiltonian(4, j, j, true);
  QaoaConfig cfg;
  cfg.depth = 4;
  cfg.starts = 2;
  cfg.optimizer.max_evals = 4000;
  const QaoaResult r = qaoa_run(h, cfg);
  CHECK(relative_error(r.energy, spectral_info(h).ground_energy) < 0.01);
  CHECK(r.trace.rows.size() == 5);
}

TEST_CASE("hybrid with empty blocks is the plain filter") {
  const double j = 1.0 / std::sqrt(2.0);
  FilterConfig fc;
  fc.max_steps = 15;
  const FilterSetup setup = prepare_filter(tfim_hamiltonian(4, j, j, true), fc);
  const StateVector plus = StateVector::plus(4);
  const EvolutionTrace nh = nh_evolve(plus, setup, fc);
  const AnsatzSpec empty{4, {}};
  const HybridResult cucu = hybrid_cucu(plus, setup, empty, fc, OptimizerConfig{});
  const HybridResult uucc = hybrid_uucc(plus, setup, empty, fc, OptimizerConfig{});
  REQUIRE(cucu.trace.rows.size() == nh.rows.size());
  REQUIRE(uucc.trace.rows.size() == nh.rows.size());
  for (std::size_t k = 0; k < nh.rows.size(); ++k) {
    CHECK(cucu.trace.rows[k].energy == nh.rows[k].energy);
    CHECK(cucu.trace.rows[k].norm == nh.rows[k].norm);
    CHECK(uucc.trace.rows[k].energy == nh.rows[k].energy);
  }
}

TEST_CASE("hybrid reachability on the two-level problem") {
  // H' = Z + 2I; ground |1> at original energy -1.
  const FilterSetup setup = prepare_filter(single_z(), 2.0, 0.3);
  FilterConfig fc;
  fc.max_steps = 1;
  OptimizerConfig opt;
  opt.tolerance = 1e-14;
  opt.x_tolerance = 1e-10;

  const AnsatzSpec ry{1, {RotationLayer{{Axis::Y}, Sharing::AllShared}}};
  const HybridResult a = hybrid_cucu(StateVector::plus(1), setup, ry, fc, opt);
  CHECK(std::abs(a.trace.rows.back().energy + 1.0) < 1e-6);

  const AnsatzSpec rx{1, {RotationLayer{{Axis::X}, Sharing::AllShared}}};
  const HybridResult b = hybrid_cucu(StateVector(1), setup, rx, fc, opt);
  CHECK(std::abs(b.trace.rows.back().energy + 1.0) < 1e-6);

  // A ground-preparing front block leaves the filter at a fixed point.
  fc.max_steps = 4;
  const HybridResult u = hybrid_uucc(StateVector(1), setup, rx, fc, opt);
  for (const auto& row : u.trace.rows) CHECK(std::abs(row.energy + 1.0) < 1e-6);
}

TEST_CASE("hybrid commits never raise the energy") {
  const double j = 1.0 / std::sqrt(2.0);
  FilterConfig fc;
  fc.max_steps = 8;
  const FilterSetup setup = prepare_filter(tfim_hamiltonian(4, j, j, true), fc);
  OptimizerConfig opt;
  opt.max_evals = 400;
  const HybridResult r = hybrid_cucu(StateVector::plus(4), setup, ansatz_preset("tfim4", 4), fc, opt);
  REQUIRE(r.block_params.size() == 8);
  for (std::size_t k = 1; k < r.trace.rows.size(); ++k) {
    CHECK(r.trace.rows[k].energy <= r.trace.rows[k - 1].energy + 1e-8);
  }
}

TEST_CASE("cucu keeps more norm than the plain filter on sat8") {
  FilterConfig fc;
  fc.max_steps = 6;
  const FilterSetup setup = prepare_filter(fixture_hamiltonian("sat8"), fc);
  const StateVector plus = StateVector::plus(8);
  OptimizerConfig opt;
  opt.max_evals = 600;
  const HybridResult cucu = hybrid_cucu(plus, setup, ansatz_preset("sat8", 8), fc, opt);
  const EvolutionTrace nh = nh_evolve(plus, setup, fc);
  for (std::size_t k = 1; k < nh.rows.size(); ++k) CHECK(cucu.trace.rows[k].norm >= nh.rows[k].norm);
}

TEST_CASE("resource table arithmetic") {
  struct Cell {
    ResourceInputs in;
    const char* depth;
    const char* meas;
  };
  const Cell cells[] = {
      {{4, 15, 5, 8, 2}, "4*15 = 60", "5*(4*2) = 40"},
      {{13, 27, 9, 26, 2}, "13*27 = 351", "9*(13*2) = 234"},
      {{15, 69, 1, 30, 2}, "15*69 = 1035", "1*(15*2) = 30"},
      {{28, 1774, 1, 56, 2}, "28*1774 = 49672", "1*(28*2) = 56"},
      {{2, 42, 5, 2, {}}, "2*42 = 84", "5*2 = 10"},
      {{4, 82, 9, 3, {}}, "4*82 = 328", "9*3 = 27"},
      {{3, 132, 1, 15, {}}, "3*132 = 396", "1*15 = 15"},
      {{6, 2307, 1, 12, {}}, "6*2307 = 13842", "1*12 = 12"},
  };
  for (const auto& c : cells) {
    const ResourceEstimate e = resource_estimate(c.in);
    CHECK(e.depth_cell == c.depth);
    CHECK(e.meas_cell == c.meas);
  }
  ResourceInputs nh{10, 7, 5, 1};
  nh.n_shots = 1000;
  CHECK(resource_estimate(nh).n_meas == 5 * 1000);
}

TEST_CASE("measurement bases") {
  const double j = 1.0 / std::sqrt(2.0);
  CHECK(measurement_bases(tfim_hamiltonian(4, j, j, true)) == 5);
  CHECK(measurement_bases(tfim_hamiltonian(8, j, j, true)) == 9);
  CHECK(measurement_bases(fixture_hamiltonian("sat5")) == 1);
  CHECK(measurement_bases(fixture_hamiltonian("sat8")) == 1);
}
