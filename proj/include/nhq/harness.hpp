#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhq/ansatz.hpp"
#include "nhq/filter.hpp"
#include "nhq/hybrid.hpp"
#include "nhq/optimize.hpp"
#include "nhq/qaoa.hpp"
#include "nhq/recording.hpp"

namespace nhq {

struct ProblemConfig {
  enum class Kind { Tfim, Sat, Table };

  Kind kind = Kind::Tfim;
  // tfim
  int n = 4;
  double coupling = 0.7071067811865476;
  double field = 0.7071067811865476;
  bool periodic = true;
  // sat: a fixture key or a DIMACS file; table: a Pauli table file
  std::string fixture;
  std::filesystem::path path;

  /// Short label used in file names and reports, e.g. "tfim8" or "sat5".
  std::string name() const;
};

Hamiltonian build_problem(const ProblemConfig& p);

/// "tfim:8", "tfim:4:open", a fixture key, a .cnf file or a Pauli table file.
ProblemConfig problem_from_string(std::string_view s);

enum class Algorithm { NonHerm, HybridCucu, HybridUucc, Qaoa, RecordFull, RecordCo, RecordMb };

std::string_view to_string(Algorithm a);
Algorithm algorithm_from_string(std::string_view s);

/// Report-only factors of the resource table; the harness measures N_step,
/// N_h and N_para itself.
struct ResourceConfig {
  long n_u = 1;
  long n_ite = 1;
  long n_shots = 1;
};

struct ExperimentConfig {
  std::string name;
  ProblemConfig problem;
  Algorithm algorithm = Algorithm::NonHerm;
  std::string initial_state = "plus";  // "plus" or "zero"
  FilterConfig filter;
  OptimizerConfig optimizer;
  std::string ansatz = "none";         // preset key for the hybrid drivers
  QaoaConfig qaoa;
  bool qaoa_sweep = false;             // optimize every depth 1..p
  RecordingConfig recording;           // ansatz filled in from recording_depth
  int recording_depth = 3;
  std::vector<std::uint64_t> seeds{0};
  std::filesystem::path output_dir = ".";
  ResourceConfig resources;
  int workers = 0;                     // 0: one per hardware thread

  void validate() const;
};

inline constexpr int kConfigVersion = 1;

/// JSON config text. Relative problem paths resolve against base_dir. Throws
/// ConfigError.
ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& file);

struct SeedRun {
  std::uint64_t seed = 0;
  EvolutionTrace trace;
  double final_energy = 0.0;
  double final_norm = 0.0;
  std::optional<int> steps_to_1pct;
  ResourceInputs resources;
};

struct RunSummary {
  std::string name;
  std::string problem;
  std::string algorithm;
  int n_qubits = 0;
  std::vector<std::uint64_t> seeds;
  double final_energy = 0.0;  // mean over seeds
  double final_energy_min = 0.0;
  double final_energy_max = 0.0;
  std::optional<double> ground_energy;
  std::optional<double> relative_error;  // of the mean final energy
  std::optional<int> steps_to_1pct;      // worst seed; empty if any seed never got there
  double final_norm = 0.0;
  double wall_time_s = 0.0;
  ResourceInputs resource_inputs;        // from the first seed
  ResourceEstimate resources;
};

struct AggregateRow {
  int step = 0;
  int count = 0;
  double energy_mean = 0.0, energy_min = 0.0, energy_max = 0.0;
  double norm_mean = 0.0, norm_min = 0.0, norm_max = 0.0;
};

struct ExperimentResult {
  std::vector<SeedRun> runs;  // in config seed order
  std::vector<AggregateRow> aggregate;
  RunSummary summary;
};

/// Runs every seed in a worker pool and merges in seed order. Deterministic
/// for a given (config, seed) apart from wall time.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// One seed, on the calling thread.
SeedRun run_seed(const ExperimentConfig& cfg, std::uint64_t seed);

/// Header step,energy,norm,success_prob,ground_fidelity, plus
/// segment_index,record_metric,c_r when any row carries recording data.
std::string trace_csv(const EvolutionTrace& trace);
std::vector<TraceRow> parse_trace_csv(std::string_view text);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);

std::string summary_json(const RunSummary& s);
RunSummary parse_summary_json(std::string_view text);

/// Writes <name>_seed<k>.csv, <name>_aggregate.csv and <name>_summary.json
/// into the output directory; returns the written paths.
std::vector<std::filesystem::path> write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

struct CompareReport {
  std::string text;
  std::string csv;
};

/// Side-by-side steps to 1%, N_depth and N_meas. MixedProblem when the
/// summaries come from different problems.
CompareReport compare_report(const std::vector<RunSummary>& summaries);

enum class PlotKind { Energy, Norm };
PlotKind plot_kind_from_string(std::string_view s);

struct Series {
  std::string name;
  std::vector<TraceRow> rows;
};

/// Standalone SVG, one polyline per series.
std::string plot_svg(const std::vector<Series>& series, PlotKind kind);
void plot_traces(const std::vector<Series>& series, PlotKind kind, const std::filesystem::path& out);

std::string read_text_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, std::string_view text);

/// Shortest round-trip decimal; "nan" / "inf" / "-inf" otherwise.
std::string format_double(double v);

}  // namespace nhq
