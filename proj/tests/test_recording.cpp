#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "nhq/error.hpp"
#include "nhq/fixtures.hpp"
#include "nhq/recording.hpp"
#include "nhq/spectral.hpp"
#include "oracles.hpp"

using namespace nhq;

namespace {

Hamiltonian single_z() {
  PauliString p(1);
  p.set(0, Pauli::Z);
  return Hamiltonian(1, {{1.0, p}});
}

RecordingConfig base_config(const AnsatzSpec& spec, RecordMode mode, int reps) {
  RecordingConfig c;
  c.ansatz = spec;
  c.mode = mode;
  c.repetitions = reps;
  c.optimizer.max_evals = 1500;
  c.optimizer.initial_step = 0.1;
  return c;
}

}  // namespace

TEST_CASE("threshold examples") {
  CHECK(threshold_correlation(0.7, 0.5) == 1.0);
  CHECK(threshold_correlation(-0.6, 0.5) == -1.0);
  CHECK(threshold_correlation(0.3, 0.5) == 0.3);
  CHECK(threshold_correlation(0.5, 0.5) == 1.0);
  CHECK_THROWS_AS(threshold_correlation(1.1, 0.5), Error);
  CHECK(threshold_correlations({0.9, -0.2, -0.95}, 0.25) == std::vector<double>{1.0, -0.2, -1.0});
}

TEST_CASE("threshold is odd and idempotent") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> m(-1.0, 1.0);
  std::uniform_real_distribution<double> cb(0.01, 0.99);
  for (int k = 0; k < 1000; ++k) {
    const double x = m(rng);
    const double c = cb(rng);
    const double y = threshold_correlation(x, c);
    CHECK(threshold_correlation(-x, c) == -y);
    CHECK(threshold_correlation(y, c) == y);
  }
}

TEST_CASE("term sampling") {
  const auto idx = sample_terms(20, 7, 3);
  CHECK(idx.size() == 7);
  CHECK(std::set<std::size_t>(idx.begin(), idx.end()).size() == 7);
  for (auto i : idx) CHECK(i < 20);
  CHECK(sample_terms(20, 7, 3) == idx);
  CHECK(sample_terms(5, 5, 9).size() == 5);
  CHECK_THROWS_AS(sample_terms(3, 4, 0), Error);
}

TEST_CASE("segment length on the two-level problem") {
  const double dt = 0.2;
  const FilterSetup setup = prepare_filter(single_z(), 2.0, dt);
  const StateVector plus = StateVector::plus(1);
  for (double eta : {0.9, 0.7, 0.5, 0.3, 0.1}) {
    int expected = 0;
    for (int m = 1; m < 10000; ++m) {
      const double w = (std::pow(std::cos(dt), 2 * m) + std::pow(std::cos(3 * dt), 2 * m)) / 2;
      if (w > eta * eta) expected = m;
      else break;
    }
    const SegmentLength c = segment_length_for_eta(plus, setup, eta);
    CHECK(c.length == std::max(expected, 1));
    CHECK(c.warning == (expected == 0));
  }
  CHECK(segment_length_for_eta(plus, setup, 0.999).warning);
  CHECK(segment_length_for_eta(plus, setup, 0.999).length == 1);

  int prev = 1 << 30;
  for (double eta = 0.05; eta < 1.0; eta += 0.05) {
    const int c = segment_length_for_eta(plus, setup, eta).length;
    CHECK(c <= prev);
    prev = c;
  }

  // The ground eigenvector decays only as cos^C(dt); the cap comes first.
  const FilterSetup slow = prepare_filter(single_z(), 2.0, 0.01);
  const SegmentLength g = segment_length_for_eta(StateVector::basis(1, 1), slow, 0.5, 50);
  CHECK(g.capped);
  CHECK(g.length == 50);
}

TEST_CASE("recording with a trivial propagator") {
  FilterSetup setup = prepare_filter(fixture_hamiltonian("sat5"), 15.0 / 8.0, 0.1);
  setup.dt = 0.0;
  const AnsatzSpec spec = recording_ansatz(5, 2);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  ParamVector omega(spec.num_params());
  for (auto& v : omega) v = u(rng);
  OptimizerConfig opt;
  opt.max_evals = 500;
  const SegmentRecord r = full_record_segment(spec, omega, setup, 2, opt);
  CHECK(r.fidelity >= 1.0 - 1e-12);
  CHECK((r.omega - omega).norm() < 1e-12);
  CHECK(std::abs(r.segment_prob - 1.0) < 1e-12);

  // A state made by the ansatz is recorded exactly.
  const StateVector made = ansatz_apply(spec, omega, StateVector(5));
  CHECK(record_fidelity(spec, omega, made) >= 1.0 - 1e-12);
}

TEST_CASE("overlap fidelity equals the projector form") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    const int c = 1 + trial % 3;
    const Hamiltonian h = oracle::random_hamiltonian(rng, n, 5);
    FilterConfig fc;
    const FilterSetup setup = prepare_filter(h, fc);
    const AnsatzSpec spec = recording_ansatz(n, 2);
    ParamVector a(spec.num_params()), b(spec.num_params());
    for (auto& v : a) v = u(rng);
    for (auto& v : b) v = u(rng);

    StateVector target = ansatz_apply(spec, a, StateVector(n));
    for (int k = 0; k < c; ++k) target = nh_step(target, setup.shifted_op, setup.dt).filtered;
    const double direct = record_fidelity(spec, b, target);
    const double projected = record_fidelity_projector(spec, a, b, setup, c);
    CHECK(std::abs(direct - projected) < 1e-9);
  }
}

TEST_CASE("fidelity floor is enforced") {
  const double j = 1.0 / std::sqrt(2.0);
  const FilterSetup setup = prepare_filter(tfim_hamiltonian(4, j, j, true), FilterConfig{});
  const AnsatzSpec frozen{4, {HadamardLayer{}}};
  CHECK_THROWS_AS(full_record_segment(frozen, ParamVector(), setup, 3, OptimizerConfig{}, 0.999999), Error);
}

TEST_CASE("full recording on tfim-4") {
  const double j = 1.0 / std::sqrt(2.0);
  const FilterSetup setup = prepare_filter(tfim_hamiltonian(4, j, j, true), FilterConfig{});
  RecordingConfig cfg = base_config(recording_ansatz(4, 4), RecordMode::Full, 30);
  cfg.optimizer.method = Method::Bfgs;
  cfg.optimizer.max_evals = 3000;
  const RecordingResult r = full_record_run(setup, cfg);
  REQUIRE(r.trace.rows.size() == 31);
  for (const auto& row : r.trace.rows) CHECK(std::abs(row.norm - 1.0) < 1e-12);
  CHECK(std::abs(r.trace.final_state.norm() - 1.0) < 1e-12);
  CHECK(r.filter_steps == 30);
  CHECK(relative_error(r.final_energy, setup.spectrum->ground_energy) < 0.01);
}

TEST_CASE("reduced recording modes") {
  const FilterSetup sat = prepare_filter(fixture_hamiltonian("sat5"), FilterConfig{});
  const AnsatzSpec spec = recording_ansatz(5, 2);

  // Thresholding switched off is the full-sampling many-body path.
  RecordingConfig co = base_config(spec, RecordMode::ReducedCO, 4);
  co.c_b = 1.5;
  RecordingConfig mb = base_config(spec, RecordMode::ReducedMB, 4);
  mb.c_r_schedule.assign(4, 1.0);
  const RecordingResult a = reduced_record_co(sat, co);
  const RecordingResult b = reduced_record_mb(sat, mb);
  REQUIRE(a.trace.rows.size() == b.trace.rows.size());
  for (std::size_t k = 0; k < a.trace.rows.size(); ++k) CHECK(a.trace.rows[k].energy == b.trace.rows[k].energy);
  for (std::size_t k = 1; k < a.trace.rows.size(); ++k) {
    CHECK(*a.trace.rows[k].record_metric >= 0.0);
    CHECK(std::abs(a.trace.rows[k].norm - 1.0) < 1e-12);
    CHECK(*a.trace.rows[k].segment_index == static_cast<int>(k - 1));
  }

  // With C_r = 1 the seed has nothing to sample.
  mb.seed = 99;
  const RecordingResult c = reduced_record_mb(sat, mb);
  for (std::size_t k = 0; k < b.trace.rows.size(); ++k) CHECK(c.trace.rows[k].energy == b.trace.rows[k].energy);

  const double j = 1.0 / std::sqrt(2.0);
  const FilterSetup tfim = prepare_filter(tfim_hamiltonian(4, j, j, true), FilterConfig{});
  RecordingConfig bad = base_config(recording_ansatz(4, 2), RecordMode::ReducedCO, 1);
  CHECK_THROWS_AS(reduced_record_co(tfim, bad), Error);

  mb.c_r_schedule.assign(3, 1.0);
  CHECK_THROWS_AS(mb.validate(), Error);
}
