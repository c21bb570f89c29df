#include "nhq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "nhq/error.hpp"
#include "nhq/fixtures.hpp"
#include "nhq/pauli_table.hpp"
#include "nhq/sat.hpp"
#include "nhq/spectral.hpp"

namespace nhq {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) config_error(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      config_error("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(std::string("bad value for '") + key + "': " + e.what());
  }
}

bool is_fixture_key(std::string_view key) {
  for (const auto& f : list_fixtures()) {
    if (f.key == key) return true;
  }
  return false;
}

Method method_from_string(const std::string& s) {
  if (s == "nelder_mead") return Method::NelderMead;
  if (s == "gradient_descent") return Method::GradientDescent;
  if (s == "bfgs") return Method::Bfgs;
  config_error("unknown optimizer method '" + s + "'");
}

ProblemConfig parse_problem(const json& j, const std::filesystem::path& base) {
  if (j.is_string()) {
    ProblemConfig p = problem_from_string(j.get<std::string>());
    if (!p.path.empty() && p.path.is_relative()) p.path = base / p.path;
    return p;
  }
  check_keys(j, {"type", "n", "J", "h_x", "periodic", "fixture", "dimacs", "path"}, "problem");
  ProblemConfig p;
  const std::string type = get_or<std::string>(j, "type", "");
  auto resolve = [&](const std::string& s) {
    std::filesystem::path path(s);
    return path.is_relative() ? base / path : path;
  };
  if (type == "tfim") {
    p.kind = ProblemConfig::Kind::Tfim;
    p.n = get_or<int>(j, "n", 4);
    p.coupling = get_or<double>(j, "J", p.coupling);
    p.field = get_or<double>(j, "h_x", p.field);
    p.periodic = get_or<bool>(j, "periodic", true);
  } else if (type == "sat") {
    p.kind = ProblemConfig::Kind::Sat;
    p.fixture = get_or<std::string>(j, "fixture", "");
    const std::string dimacs = get_or<std::string>(j, "dimacs", "");
    if (p.fixture.empty() == dimacs.empty()) config_error("sat problem needs exactly one of 'fixture' or 'dimacs'");
    if (!dimacs.empty()) p.path = resolve(dimacs);
  } else if (type == "table") {
    p.kind = ProblemConfig::Kind::Table;
    p.fixture = get_or<std::string>(j, "fixture", "");
    const std::string path = get_or<std::string>(j, "path", "");
    if (p.fixture.empty() == path.empty()) config_error("table problem needs exactly one of 'fixture' or 'path'");
    if (!path.empty()) p.path = resolve(path);
  } else {
    config_error("problem type must be tfim, sat or table");
  }
  return p;
}

json resources_json(const ResourceInputs& in, const ResourceEstimate& e) {
  json r;
  r["n_step"] = in.n_step;
  r["n_u"] = in.n_u;
  r["n_h"] = in.n_h;
  r["n_para"] = in.n_para;
  r["para_per_step"] = in.para_per_step ? json(*in.para_per_step) : json(nullptr);
  r["n_ite"] = in.n_ite;
  r["n_shots"] = in.n_shots;
  r["n_depth"] = e.n_depth;
  r["n_meas"] = e.n_meas;
  r["depth_cell"] = e.depth_cell;
  r["meas_cell"] = e.meas_cell;
  return r;
}

std::string fmt_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fmt_general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error(ErrorCode::ParseError, "bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error(ErrorCode::ParseError, "bad integer '" + s + "'");
  return v;
}

}  // namespace

// ---------------------------------------------------------------- problems

std::string ProblemConfig::name() const {
  switch (kind) {
    case Kind::Tfim: return "tfim" + std::to_string(n) + (periodic ? "" : "-open");
    case Kind::Sat:
    case Kind::Table: return fixture.empty() ? path.stem().string() : fixture;
  }
  return "?";
}

Hamiltonian build_problem(const ProblemConfig& p) {
  switch (p.kind) {
    case ProblemConfig::Kind::Tfim:
      if (p.n < 2 || p.n > kMaxStateQubits) config_error("tfim size out of range");
      return tfim_hamiltonian(p.n, p.coupling, p.field, p.periodic);
    case ProblemConfig::Kind::Sat:
      if (!p.fixture.empty()) return fixture_hamiltonian(p.fixture);
      {
        const std::string text = read_text_file(p.path);
        return sat_to_hamiltonian(parse_dimacs(std::string_view(text)));
      }
    case ProblemConfig::Kind::Table:
      if (!p.fixture.empty()) return parse_pauli_table(table_text(p.fixture));
      return parse_pauli_table(read_text_file(p.path));
  }
  config_error("unknown problem kind");
}

ProblemConfig problem_from_string(std::string_view s) {
  ProblemConfig p;
  if (s.substr(0, 5) == "tfim:") {
    const auto parts = split(s, ':');
    if (parts.size() < 2 || parts.size() > 3) config_error("expected tfim:N or tfim:N:open");
    try {
      p.n = parse_int(parts[1]);
    } catch (const Error&) {
      config_error("bad tfim size '" + parts[1] + "'");
    }
    if (parts.size() == 3) {
      if (parts[2] != "open" && parts[2] != "periodic") config_error("tfim boundary must be open or periodic");
      p.periodic = parts[2] == "periodic";
    }
    return p;
  }
  if (is_fixture_key(s)) {
    p.kind = ProblemConfig::Kind::Sat;
    p.fixture = std::string(s);
    return p;
  }
  const std::filesystem::path path{std::string(s)};
  p.kind = path.extension() == ".cnf" ? ProblemConfig::Kind::Sat : ProblemConfig::Kind::Table;
  p.path = path;
  return p;
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::NonHerm: return "nonherm";
    case Algorithm::HybridCucu: return "hybrid_cucu";
    case Algorithm::HybridUucc: return "hybrid_uucc";
    case Algorithm::Qaoa: return "qaoa";
    case Algorithm::RecordFull: return "record_full";
    case Algorithm::RecordCo: return "record_co";
    case Algorithm::RecordMb: return "record_mb";
  }
  return "?";
}

Algorithm algorithm_from_string(std::string_view s) {
  for (Algorithm a : {Algorithm::NonHerm, Algorithm::HybridCucu, Algorithm::HybridUucc, Algorithm::Qaoa,
                      Algorithm::RecordFull, Algorithm::RecordCo, Algorithm::RecordMb}) {
    if (to_string(a) == s) return a;
  }
  config_error("unknown algorithm '" + std::string(s) + "'");
}

// ------------------------------------------------------------------ config

void ExperimentConfig::validate() const {
  if (name.empty()) config_error("name must be nonempty");
  if (name.find_first_of("/\\") != std::string::npos) config_error("name must not contain path separators");
  if (seeds.empty()) config_error("seeds must be nonempty");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) config_error("duplicate seed");
  if (initial_state != "plus" && initial_state != "zero") config_error("initial_state must be plus or zero");
  if (workers < 0) config_error("workers must be >= 0");
  if (recording_depth < 1) config_error("recording depth must be >= 1");
  if (resources.n_u < 0 || resources.n_ite < 1 || resources.n_shots < 1) config_error("bad resource factors");
  filter.validate();
  optimizer.validate();
  switch (algorithm) {
    case Algorithm::HybridCucu:
    case Algorithm::HybridUucc: {
      const auto keys = ansatz_preset_keys();
      if (std::find(keys.begin(), keys.end(), ansatz) == keys.end()) config_error("unknown ansatz preset '" + ansatz + "'");
      break;
    }
    case Algorithm::Qaoa: qaoa.validate(); break;
    case Algorithm::RecordFull:
    case Algorithm::RecordCo:
    case Algorithm::RecordMb: {
      RecordingConfig rc = recording;
      rc.ansatz = recording_ansatz(2, recording_depth);
      rc.mode = algorithm == Algorithm::RecordFull ? RecordMode::Full
                : algorithm == Algorithm::RecordCo ? RecordMode::ReducedCO
                                                   : RecordMode::ReducedMB;
      rc.validate();
      break;
    }
    case Algorithm::NonHerm: break;
  }
}

ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  check_keys(j,
             {"version", "name", "problem", "algorithm", "initial_state", "filter", "optimizer", "ansatz", "qaoa",
              "recording", "seeds", "output", "resources", "workers"},
             "config");
  if (!j.contains("version") || j["version"] != kConfigVersion) config_error("config needs \"version\": 1");
  if (!j.contains("problem")) config_error("missing 'problem'");
  if (!j.contains("algorithm")) config_error("missing 'algorithm'");

  ExperimentConfig c;
  c.problem = parse_problem(j["problem"], base_dir);
  c.algorithm = algorithm_from_string(get_or<std::string>(j, "algorithm", ""));
  c.name = get_or<std::string>(j, "name", c.problem.name() + "_" + std::string(to_string(c.algorithm)));
  c.initial_state = get_or<std::string>(j, "initial_state", c.initial_state);
  c.ansatz = get_or<std::string>(j, "ansatz", c.ansatz);
  c.workers = get_or<int>(j, "workers", 0);

  if (j.contains("filter")) {
    const json& f = j["filter"];
    check_keys(f, {"dt", "steps", "margin", "eta", "stop_on_convergence", "convergence_tol"}, "filter");
    if (f.contains("dt")) c.filter.dt = get_or<double>(f, "dt", 0.0);
    c.filter.max_steps = get_or<int>(f, "steps", c.filter.max_steps);
    c.filter.margin = get_or<double>(f, "margin", c.filter.margin);
    c.filter.eta = get_or<double>(f, "eta", c.filter.eta);
    c.filter.stop_on_convergence = get_or<bool>(f, "stop_on_convergence", false);
    c.filter.convergence_tol = get_or<double>(f, "convergence_tol", c.filter.convergence_tol);
  }
  if (j.contains("optimizer")) {
    const json& o = j["optimizer"];
    check_keys(o,
               {"method", "max_evals", "tolerance", "x_tolerance", "initial_step", "learning_rate", "fd_step",
                "restarts"},
               "optimizer");
    c.optimizer.method = method_from_string(get_or<std::string>(o, "method", "nelder_mead"));
    c.optimizer.max_evals = get_or<int>(o, "max_evals", c.optimizer.max_evals);
    c.optimizer.tolerance = get_or<double>(o, "tolerance", c.optimizer.tolerance);
    c.optimizer.x_tolerance = get_or<double>(o, "x_tolerance", c.optimizer.x_tolerance);
    c.optimizer.initial_step = get_or<double>(o, "initial_step", c.optimizer.initial_step);
    c.optimizer.learning_rate = get_or<double>(o, "learning_rate", c.optimizer.learning_rate);
    c.optimizer.fd_step = get_or<double>(o, "fd_step", c.optimizer.fd_step);
    c.optimizer.restarts = get_or<int>(o, "restarts", c.optimizer.restarts);
  }
  if (j.contains("qaoa")) {
    const json& q = j["qaoa"];
    check_keys(q, {"depth", "starts", "sweep", "initial"}, "qaoa");
    c.qaoa.depth = get_or<int>(q, "depth", 1);
    c.qaoa.starts = get_or<int>(q, "starts", 1);
    c.qaoa_sweep = get_or<bool>(q, "sweep", false);
    if (q.contains("initial")) {
      const auto v = get_or<std::vector<double>>(q, "initial", {});
      c.qaoa.initial = Eigen::Map<const ParamVector>(v.data(), static_cast<Eigen::Index>(v.size()));
    }
  }
  if (j.contains("recording")) {
    const json& r = j["recording"];
    check_keys(r,
               {"segment_length", "repetitions", "depth", "c_b", "c_r_schedule", "eta", "match_loss", "fidelity_loss",
                "fidelity_floor"},
               "recording");
    c.recording.segment_length = get_or<int>(r, "segment_length", 1);
    c.recording.repetitions = get_or<int>(r, "repetitions", 1);
    c.recording_depth = get_or<int>(r, "depth", c.recording_depth);
    c.recording.c_b = get_or<double>(r, "c_b", c.recording.c_b);
    c.recording.c_r_schedule = get_or<std::vector<double>>(r, "c_r_schedule", {});
    c.recording.eta = get_or<double>(r, "eta", c.recording.eta);
    const std::string ml = get_or<std::string>(r, "match_loss", "squared");
    if (ml != "squared" && ml != "absolute") config_error("match_loss must be squared or absolute");
    c.recording.match_loss = ml == "squared" ? MatchLoss::Squared : MatchLoss::Absolute;
    const std::string fl = get_or<std::string>(r, "fidelity_loss", "global");
    if (fl != "global" && fl != "local") config_error("fidelity_loss must be global or local");
    c.recording.fidelity_loss = fl == "global" ? FidelityLoss::Global : FidelityLoss::Local;
    c.recording.fidelity_floor = get_or<double>(r, "fidelity_floor", c.recording.fidelity_floor);
  }
  if (j.contains("seeds")) c.seeds = get_or<std::vector<std::uint64_t>>(j, "seeds", {});
  if (j.contains("output")) {
    std::filesystem::path out(get_or<std::string>(j, "output", "."));
    c.output_dir = out.is_relative() ? base_dir / out : out;
  } else {
    c.output_dir = base_dir.empty() ? std::filesystem::path(".") : base_dir;
  }
  if (j.contains("resources")) {
    const json& r = j["resources"];
    check_keys(r, {"n_u", "n_ite", "n_shots"}, "resources");
    c.resources.n_u = get_or<long>(r, "n_u", 1);
    c.resources.n_ite = get_or<long>(r, "n_ite", 1);
    c.resources.n_shots = get_or<long>(r, "n_shots", 1);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  return parse_config(read_text_file(file), file.parent_path());
}

// --------------------------------------------------------------------- run

namespace {

struct Prepared {
  Hamiltonian h;
  FilterSetup setup;
  long n_h = 0;
};

SeedRun run_prepared(const ExperimentConfig& cfg, const Prepared& prep, std::uint64_t seed) {
  const FilterSetup& setup = prep.setup;
  const int n = setup.n_qubits();
  const StateVector psi0 = cfg.initial_state == "zero" ? StateVector::zero(n) : StateVector::plus(n);
  OptimizerConfig opt = cfg.optimizer;
  opt.seed = seed;

  SeedRun run;
  run.seed = seed;
  long n_para = 1;
  std::optional<long> para_per_step;

  auto recording_config = [&](RecordMode mode) {
    RecordingConfig rc = cfg.recording;
    rc.ansatz = recording_ansatz(n, cfg.recording_depth);
    rc.optimizer = opt;
    rc.mode = mode;
    rc.seed = seed;
    n_para = rc.ansatz.num_params();
    return rc;
  };

  switch (cfg.algorithm) {
    case Algorithm::NonHerm: run.trace = nh_evolve(psi0, setup, cfg.filter); break;
    case Algorithm::HybridCucu:
    case Algorithm::HybridUucc: {
      const AnsatzSpec block = ansatz_preset(cfg.ansatz, n);
      n_para = std::max(1, block.num_params());
      run.trace = (cfg.algorithm == Algorithm::HybridCucu ? hybrid_cucu : hybrid_uucc)(psi0, setup, block, cfg.filter,
                                                                                        opt)
                      .trace;
      break;
    }
    case Algorithm::Qaoa: {
      QaoaConfig q = cfg.qaoa;
      q.optimizer = opt;
      const QaoaResult r = cfg.qaoa_sweep ? qaoa_sweep(prep.h, q.depth, q, psi0) : qaoa_run(prep.h, q, psi0);
      run.trace = r.trace;
      para_per_step = 2;
      break;
    }
    case Algorithm::RecordFull: run.trace = full_record_run(setup, recording_config(RecordMode::Full)).trace; break;
    case Algorithm::RecordCo: run.trace = reduced_record_co(setup, recording_config(RecordMode::ReducedCO)).trace; break;
    case Algorithm::RecordMb: run.trace = reduced_record_mb(setup, recording_config(RecordMode::ReducedMB)).trace; break;
  }
  if (run.trace.rows.empty()) throw Error(ErrorCode::EmptyInput, "algorithm produced no trace rows");

  const TraceRow& last = run.trace.rows.back();
  run.final_energy = last.energy;
  run.final_norm = last.norm;
  if (setup.spectrum) run.steps_to_1pct = run.trace.steps_to(0.01, setup.spectrum->ground_energy);

  ResourceInputs& in = run.resources;
  in.n_step = run.steps_to_1pct.value_or(last.step);
  in.n_u = cfg.resources.n_u;
  in.n_h = prep.n_h;
  in.n_ite = cfg.resources.n_ite;
  in.n_shots = cfg.resources.n_shots;
  if (para_per_step) {
    in.para_per_step = para_per_step;
    in.n_para = in.n_step * *para_per_step;
  } else {
    in.n_para = n_para;
  }
  return run;
}

Prepared prepare(const ExperimentConfig& cfg) {
  cfg.validate();
  Prepared p;
  p.h = build_problem(cfg.problem);
  if (p.h.n_qubits() > kMaxStateQubits) throw Error(ErrorCode::TooLarge, "problem exceeds the simulator register");
  p.setup = prepare_filter(p.h, cfg.filter);
  p.n_h = measurement_bases(p.h);
  return p;
}

std::vector<AggregateRow> aggregate(const std::vector<SeedRun>& runs) {
  std::map<int, std::vector<const TraceRow*>> by_step;
  for (const auto& r : runs) {
    for (const auto& row : r.trace.rows) by_step[row.step].push_back(&row);
  }
  std::vector<AggregateRow> out;
  for (const auto& [step, rows] : by_step) {
    AggregateRow a;
    a.step = step;
    a.count = static_cast<int>(rows.size());
    a.energy_min = a.norm_min = INFINITY;
    a.energy_max = a.norm_max = -INFINITY;
    for (const TraceRow* r : rows) {
      a.energy_mean += r->energy;
      a.norm_mean += r->norm;
      a.energy_min = std::min(a.energy_min, r->energy);
      a.energy_max = std::max(a.energy_max, r->energy);
      a.norm_min = std::min(a.norm_min, r->norm);
      a.norm_max = std::max(a.norm_max, r->norm);
    }
    a.energy_mean /= a.count;
    a.norm_mean /= a.count;
    out.push_back(a);
  }
  return out;
}

}  // namespace

SeedRun run_seed(const ExperimentConfig& cfg, std::uint64_t seed) { return run_prepared(cfg, prepare(cfg), seed); }

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const Prepared prep = prepare(cfg);

  const std::size_t n_jobs = cfg.seeds.size();
  std::size_t n_workers = cfg.workers > 0 ? static_cast<std::size_t>(cfg.workers)
                                          : std::max(1U, std::thread::hardware_concurrency());
  n_workers = std::min(n_workers, n_jobs);

  std::vector<SeedRun> runs(n_jobs);
  std::vector<std::exception_ptr> errors(n_jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < n_jobs; k = next++) {
      try {
        runs[k] = run_prepared(cfg, prep, cfg.seeds[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ExperimentResult out;
  out.runs = std::move(runs);
  out.aggregate = aggregate(out.runs);

  RunSummary& s = out.summary;
  s.name = cfg.name;
  s.problem = cfg.problem.name();
  s.algorithm = std::string(to_string(cfg.algorithm));
  s.n_qubits = prep.h.n_qubits();
  s.seeds = cfg.seeds;
  s.final_energy_min = INFINITY;
  s.final_energy_max = -INFINITY;
  bool all_reached = true;
  int worst = 0;
  for (const auto& r : out.runs) {
    s.final_energy += r.final_energy;
    s.final_norm += r.final_norm;
    s.final_energy_min = std::min(s.final_energy_min, r.final_energy);
    s.final_energy_max = std::max(s.final_energy_max, r.final_energy);
    if (r.steps_to_1pct) {
      worst = std::max(worst, *r.steps_to_1pct);
    } else {
      all_reached = false;
    }
  }
  s.final_energy /= static_cast<double>(n_jobs);
  s.final_norm /= static_cast<double>(n_jobs);
  if (prep.setup.spectrum) {
    s.ground_energy = prep.setup.spectrum->ground_energy;
    s.relative_error = relative_error(s.final_energy, *s.ground_energy);
    if (all_reached) s.steps_to_1pct = worst;
  }
  // Resources follow the slowest seed, like steps_to_1pct.
  const auto slowest = std::max_element(out.runs.begin(), out.runs.end(), [](const SeedRun& a, const SeedRun& b) {
    return a.resources.n_step < b.resources.n_step;
  });
  s.resource_inputs = slowest->resources;
  s.resources = resource_estimate(s.resource_inputs);
  s.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// --------------------------------------------------------------------- I/O

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string trace_csv(const EvolutionTrace& trace) {
  const bool extra = std::any_of(trace.rows.begin(), trace.rows.end(), [](const TraceRow& r) {
    return r.segment_index || r.record_metric || r.c_r;
  });
  std::string out = "step,energy,norm,success_prob,ground_fidelity";
  if (extra) out += ",segment_index,record_metric,c_r";
  out += '\n';
  for (const auto& r : trace.rows) {
    out += std::to_string(r.step) + ',' + format_double(r.energy) + ',' + format_double(r.norm) + ',' +
           format_double(r.success_prob) + ',' + format_double(r.ground_fidelity);
    if (extra) {
      out += ',' + (r.segment_index ? std::to_string(*r.segment_index) : std::string());
      out += ',' + (r.record_metric ? format_double(*r.record_metric) : std::string());
      out += ',' + (r.c_r ? format_double(*r.c_r) : std::string());
    }
    out += '\n';
  }
  return out;
}

std::vector<TraceRow> parse_trace_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::EmptyInput, "empty trace file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line, ',');
  std::map<std::string, std::size_t> col;
  for (std::size_t k = 0; k < header.size(); ++k) col[header[k]] = k;
  for (const char* need : {"step", "energy", "norm", "success_prob", "ground_fidelity"}) {
    if (!col.count(need)) throw Error(ErrorCode::ParseError, std::string("trace header lacks '") + need + "'");
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw Error(ErrorCode::ParseError, "ragged trace row '" + line + "'");
    TraceRow r;
    r.step = parse_int(cells[col["step"]]);
    r.energy = parse_double(cells[col["energy"]]);
    r.norm = parse_double(cells[col["norm"]]);
    r.success_prob = parse_double(cells[col["success_prob"]]);
    r.ground_fidelity = parse_double(cells[col["ground_fidelity"]]);
    auto opt_cell = [&](const char* name) -> const std::string* {
      const auto it = col.find(name);
      if (it == col.end() || cells[it->second].empty()) return nullptr;
      return &cells[it->second];
    };
    if (const auto* c = opt_cell("segment_index")) r.segment_index = parse_int(*c);
    if (const auto* c = opt_cell("record_metric")) r.record_metric = parse_double(*c);
    if (const auto* c = opt_cell("c_r")) r.c_r = parse_double(*c);
    rows.push_back(r);
  }
  return rows;
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
  std::string out = "step,count,energy_mean,energy_min,energy_max,norm_mean,norm_min,norm_max\n";
  for (const auto& a : rows) {
    out += std::to_string(a.step) + ',' + std::to_string(a.count) + ',' + format_double(a.energy_mean) + ',' +
           format_double(a.energy_min) + ',' + format_double(a.energy_max) + ',' + format_double(a.norm_mean) + ',' +
           format_double(a.norm_min) + ',' + format_double(a.norm_max) + '\n';
  }
  return out;
}

std::string summary_json(const RunSummary& s) {
  json j;
  j["version"] = kConfigVersion;
  j["name"] = s.name;
  j["problem"] = s.problem;
  j["algorithm"] = s.algorithm;
  j["n_qubits"] = s.n_qubits;
  j["seeds"] = s.seeds;
  j["final_energy"] = s.final_energy;
  j["final_energy_min"] = s.final_energy_min;
  j["final_energy_max"] = s.final_energy_max;
  j["ground_energy"] = s.ground_energy ? json(*s.ground_energy) : json(nullptr);
  j["relative_error"] = s.relative_error ? json(*s.relative_error) : json(nullptr);
  j["steps_to_1pct"] = s.steps_to_1pct ? json(*s.steps_to_1pct) : json("not reached");
  j["final_norm"] = s.final_norm;
  j["wall_time_s"] = s.wall_time_s;
  j["resources"] = resources_json(s.resource_inputs, s.resources);
  return j.dump(2) + "\n";
}

RunSummary parse_summary_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("invalid summary JSON: ") + e.what());
  }
  try {
    RunSummary s;
    s.name = j.at("name").get<std::string>();
    s.problem = j.at("problem").get<std::string>();
    s.algorithm = j.at("algorithm").get<std::string>();
    s.n_qubits = j.value("n_qubits", 0);
    s.seeds = j.value("seeds", std::vector<std::uint64_t>{});
    s.final_energy = j.at("final_energy").get<double>();
    s.final_energy_min = j.value("final_energy_min", s.final_energy);
    s.final_energy_max = j.value("final_energy_max", s.final_energy);
    if (j.contains("ground_energy") && j["ground_energy"].is_number()) s.ground_energy = j["ground_energy"].get<double>();
    if (j.contains("relative_error") && j["relative_error"].is_number()) {
      s.relative_error = j["relative_error"].get<double>();
    }
    if (j.contains("steps_to_1pct") && j["steps_to_1pct"].is_number()) s.steps_to_1pct = j["steps_to_1pct"].get<int>();
    s.final_norm = j.value("final_norm", 0.0);
    s.wall_time_s = j.value("wall_time_s", 0.0);
    const json& r = j.at("resources");
    ResourceInputs& in = s.resource_inputs;
    in.n_step = r.at("n_step").get<long>();
    in.n_u = r.at("n_u").get<long>();
    in.n_h = r.at("n_h").get<long>();
    in.n_para = r.at("n_para").get<long>();
    if (r.contains("para_per_step") && r["para_per_step"].is_number()) in.para_per_step = r["para_per_step"].get<long>();
    in.n_ite = r.value("n_ite", 1L);
    in.n_shots = r.value("n_shots", 1L);
    s.resources = resource_estimate(in);
    return s;
  } catch (const json::exception& e) {
    config_error(std::string("malformed summary: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& p, std::string_view text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + p.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + p.string());
}

std::vector<std::filesystem::path> write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  const std::string& name = result.summary.name;
  std::vector<std::filesystem::path> written;
  for (const auto& r : result.runs) {
    written.push_back(dir / (name + "_seed" + std::to_string(r.seed) + ".csv"));
    write_text_file(written.back(), trace_csv(r.trace));
  }
  written.push_back(dir / (name + "_aggregate.csv"));
  write_text_file(written.back(), aggregate_csv(result.aggregate));
  written.push_back(dir / (name + "_summary.json"));
  write_text_file(written.back(), summary_json(result.summary));
  return written;
}

// ------------------------------------------------------------------ report

CompareReport compare_report(const std::vector<RunSummary>& summaries) {
  if (summaries.empty()) throw Error(ErrorCode::EmptyInput, "nothing to compare");
  for (const auto& s : summaries) {
    if (s.problem != summaries.front().problem) {
      throw Error(ErrorCode::MixedProblem, "summaries for " + summaries.front().problem + " and " + s.problem);
    }
  }
  std::vector<std::array<std::string, 5>> table;
  table.push_back({"run", "algorithm", "steps_to_1%", "N_depth", "N_meas"});
  CompareReport out;
  out.csv = "name,algorithm,steps_to_1pct,n_step,n_depth,n_meas,depth_cell,meas_cell\n";
  for (const auto& s : summaries) {
    const std::string steps = s.steps_to_1pct ? std::to_string(*s.steps_to_1pct) : "not reached";
    table.push_back({s.name, s.algorithm, steps, s.resources.depth_cell, s.resources.meas_cell});
    out.csv += s.name + ',' + s.algorithm + ',' + (s.steps_to_1pct ? steps : std::string()) + ',' +
               std::to_string(s.resource_inputs.n_step) + ',' + std::to_string(s.resources.n_depth) + ',' +
               std::to_string(s.resources.n_meas) + ",\"" + s.resources.depth_cell + "\",\"" + s.resources.meas_cell +
               "\"\n";
  }
  std::array<std::size_t, 5> width{};
  for (const auto& row : table) {
    for (std::size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], row[c].size());
  }
  out.text = "problem: " + summaries.front().problem + "\n";
  for (const auto& row : table) {
    std::string line;
    for (std::size_t c = 0; c < 5; ++c) {
      line += row[c];
      if (c + 1 < 5) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out.text += line + "\n";
  }
  return out;
}

// -------------------------------------------------------------------- plot

PlotKind plot_kind_from_string(std::string_view s) {
  if (s == "energy" || s == "energy-vs-step") return PlotKind::Energy;
  if (s == "norm" || s == "norm-vs-step") return PlotKind::Norm;
  config_error("plot kind must be energy or norm");
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string plot_svg(const std::vector<Series>& series, PlotKind kind) {
  if (series.empty()) throw Error(ErrorCode::EmptyInput, "no series to plot");
  auto value = [kind](const TraceRow& r) { return kind == PlotKind::Energy ? r.energy : r.norm; };

  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    if (s.rows.empty()) throw Error(ErrorCode::EmptyInput, "series '" + s.name + "' is empty");
    for (const auto& r : s.rows) {
      x0 = std::min(x0, static_cast<double>(r.step));
      x1 = std::max(x1, static_cast<double>(r.step));
      const double v = value(r);
      if (std::isfinite(v)) {
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
      }
    }
  }
  if (!std::isfinite(y0)) y0 = 0.0, y1 = 1.0;
  if (x1 <= x0) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) {
    const double pad = std::max(0.5, std::abs(y0) * 0.1);
    y0 -= pad;
    y1 += pad;
  }

  const double w = 720, h = 440, left = 80, right = 170, top = 30, bottom = 60;
  const double pw = w - left - right, ph = h - top - bottom;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << ' ' << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph << "\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph << "\"/>\n";
  svg << "</g>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = x0 + (x1 - x0) * k / 5, yv = y0 + (y1 - y0) * k / 5;
    svg << "<text x=\"" << fmt_fixed(px(xv), 2) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
        << fmt_general(xv) << "</text>\n";
    svg << "<text x=\"" << left - 6 << "\" y=\"" << fmt_fixed(py(yv) + 4, 2) << "\" text-anchor=\"end\">"
        << fmt_general(yv) << "</text>\n";
  }
  svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << h - 15 << "\" text-anchor=\"middle\">step</text>\n";
  svg << "<text x=\"20\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << top + ph / 2
      << ")\">" << (kind == PlotKind::Energy ? "energy" : "norm") << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& r : series[s].rows) {
      const double v = value(r);
      if (!std::isfinite(v)) continue;
      svg << (first ? "" : " ") << fmt_fixed(px(r.step), 2) << ',' << fmt_fixed(py(v), 2);
      first = false;
    }
    svg << "\"/>\n";
    const double ly = top + 10 + 18.0 * static_cast<double>(s);
    svg << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 35 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << left + pw + 40 << "\" y=\"" << ly + 4 << "\">" << xml_escape(series[s].name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void plot_traces(const std::vector<Series>& series, PlotKind kind, const std::filesystem::path& out) {
  write_text_file(out, plot_svg(series, kind));
}

}  // namespace nhq
