// Command-line front end: run experiments, compare summaries, plot traces,
// list fixtures and print exact spectra.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nhq/error.hpp"
#include "nhq/fixtures.hpp"
#include "nhq/harness.hpp"
#include "nhq/spectral.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void print_summary(const nhq::RunSummary& s) {
  std::printf("%s  %s on %s, %zu seed(s)\n", s.name.c_str(), s.algorithm.c_str(), s.problem.c_str(), s.seeds.size());
  std::printf("  final energy     %.10g  [%.10g, %.10g]\n", s.final_energy, s.final_energy_min, s.final_energy_max);
  if (s.ground_energy) std::printf("  ground energy    %.10g\n", *s.ground_energy);
  if (s.relative_error) std::printf("  relative error   %.3e\n", *s.relative_error);
  if (s.steps_to_1pct) {
    std::printf("  steps to 1%%      %d\n", *s.steps_to_1pct);
  } else {
    std::printf("  steps to 1%%      not reached\n");
  }
  std::printf("  final norm       %.6e\n", s.final_norm);
  std::printf("  N_depth          %s\n", s.resources.depth_cell.c_str());
  std::printf("  N_meas           %s\n", s.resources.meas_cell.c_str());
  std::printf("  wall time        %.2f s\n", s.wall_time_s);
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& out,
            const std::optional<std::uint64_t>& seed) {
  nhq::ExperimentConfig cfg = nhq::load_config(config_path);
  if (out) cfg.output_dir = *out;
  if (seed) cfg.seeds = {*seed};
  const nhq::ExperimentResult result = nhq::run_experiment(cfg);
  const auto written = nhq::write_outputs(result, cfg.output_dir);
  print_summary(result.summary);
  for (const auto& p : written) std::printf("  wrote %s\n", p.string().c_str());
  return 0;
}

int cmd_compare(const std::vector<std::string>& files, const std::optional<std::string>& out) {
  std::vector<nhq::RunSummary> summaries;
  for (const auto& f : files) summaries.push_back(nhq::parse_summary_json(nhq::read_text_file(f)));
  const nhq::CompareReport report = nhq::compare_report(summaries);
  std::fputs(report.text.c_str(), stdout);
  if (out) {
    std::filesystem::create_directories(*out);
    const auto path = std::filesystem::path(*out) / "compare.csv";
    nhq::write_text_file(path, report.csv);
    std::printf("wrote %s\n", path.string().c_str());
  }
  return 0;
}

int cmd_plot(const std::vector<std::string>& files, const std::string& kind_name, const std::optional<std::string>& out) {
  const nhq::PlotKind kind = nhq::plot_kind_from_string(kind_name);
  std::vector<nhq::Series> series;
  for (const auto& f : files) {
    series.push_back({std::filesystem::path(f).stem().string(), nhq::parse_trace_csv(nhq::read_text_file(f))});
  }
  std::filesystem::path target = out ? std::filesystem::path(*out) : std::filesystem::path(".");
  if (target.extension() != ".svg") {
    std::filesystem::create_directories(target);
    target /= std::string(kind == nhq::PlotKind::Energy ? "energy" : "norm") + ".svg";
  }
  nhq::plot_traces(series, kind, target);
  std::printf("wrote %s\n", target.string().c_str());
  return 0;
}

int cmd_fixtures() {
  for (const auto& f : nhq::list_fixtures()) std::printf("%-8s %s\n", f.key.c_str(), f.description.c_str());
  return 0;
}

int cmd_oracle(const std::string& problem, double margin) {
  const nhq::ProblemConfig pc = nhq::problem_from_string(problem);
  const nhq::Hamiltonian h = nhq::build_problem(pc);
  const nhq::SpectralInfo info = nhq::spectral_info(h);
  const nhq::ShiftedProblem sp = nhq::shift_and_timestep(h, info, margin);
  std::printf("problem          %s\n", pc.name().c_str());
  std::printf("qubits           %d\n", info.n_qubits);
  std::printf("terms            %zu (identity offset %.10g)\n", h.num_terms(), h.identity_offset());
  std::printf("ground energy    %.15g\n", info.ground_energy);
  std::printf("max energy       %.15g\n", info.e_max);
  std::printf("degeneracy       %d\n", info.ground_degeneracy);
  std::printf("gap              %.15g\n", info.gap);
  std::printf("excitation gap   %.15g\n", info.excitation_gap);
  std::printf("filter shift     %.15g\n", sp.shift);
  std::printf("filter dt        %.15g\n", sp.dt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cosine-filter ground-state simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> out;
  std::optional<std::uint64_t> seed_override;
  app.add_option("--out", out, "Output directory (plot: directory or .svg file)");
  app.add_option("--seed-override", seed_override, "Run a single seed instead of the configured list");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
  run->add_option("config", config_path, "Config file")->required();

  std::vector<std::string> summaries;
  auto* compare = app.add_subcommand("compare", "Resource table from summary JSON files");
  compare->add_option("summaries", summaries, "Summary files")->required();

  std::vector<std::string> traces;
  std::string kind = "energy";
  auto* plot = app.add_subcommand("plot", "SVG line plot of trace CSV files");
  plot->add_option("traces", traces, "Trace CSV files")->required();
  plot->add_option("--kind", kind, "energy or norm")->check(CLI::IsMember({"energy", "norm", "energy-vs-step", "norm-vs-step"}));

  auto* fixtures = app.add_subcommand("fixtures", "Shipped Pauli-table fixtures");
  auto* list = fixtures->add_subcommand("list", "List fixture keys");
  fixtures->require_subcommand(1);

  std::string problem;
  double margin = 1e-3;
  auto* oracle = app.add_subcommand("oracle", "Exact spectrum of a problem (tfim:N[:open], fixture key, .cnf or table file)");
  oracle->add_option("problem", problem, "Problem")->required();
  oracle->add_option("--margin", margin, "Filter shift margin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, out, seed_override);
    if (*compare) return cmd_compare(summaries, out);
    if (*plot) return cmd_plot(traces, kind, out);
    if (*list) return cmd_fixtures();
    if (*oracle) return cmd_oracle(problem, margin);
  } catch (const nhq::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return nhq::is_numerical(e.code()) ? kExitNumerical : kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return 0;
}
