#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "kadcon/dimacs.hpp"
#include "kadcon/even_transform.hpp"
#include "kadcon/experiment.hpp"
#include "kadcon/kappa.hpp"
#include "kadcon/stats.hpp"

namespace fs = std::filesystem;
using namespace kadcon;

namespace {

int cmd_simulate(const std::string& config_path, uint64_t seed, bool seed_set,
                 const std::string& out_dir, double c, int64_t from_min, int workers,
                 bool snapshots) {
  ExperimentMatrix matrix;
  matrix.configs = load_matrix_file(config_path);
  if (seed_set) {
    for (auto& cfg : matrix.configs) cfg.seed = seed;
  }
  matrix.output_dir = out_dir;
  matrix.analysis.c = c;
  matrix.analysis.from_min = from_min;
  matrix.workers = workers;
  matrix.write_snapshots = snapshots;
  auto outcome = run_matrix(matrix);
  for (const auto& entry : outcome.entries) {
    if (entry.ok) {
      std::cout << entry.tag << " ok\n";
    } else {
      std::cout << entry.tag << " FAILED " << entry.error << '\n';
    }
  }
  return outcome.all_ok() ? 0 : 2;
}

int cmd_analyze(const std::string& snapshot_path, double c,
                const std::string& dimacs_dir) {
  auto snap = load_snapshot_file(snapshot_path);
  KappaWitness witness;
  auto report = analyze_snapshot(snap, c, &witness);
  write_report_csv({report}, std::cout);
  if (!dimacs_dir.empty()) {
    if (report.complete_graph) {
      std::cerr << "graph is complete: no flow ran, no witness to export\n";
    } else {
      auto g = build_digraph(snap);
      fs::create_directories(dimacs_dir);
      auto path = fs::path(dimacs_dir) / "witness.dimacs";
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + path.string());
      write_dimacs(even_transform(g), TransformedGraph::out_vertex(witness.v),
                   TransformedGraph::in_vertex(witness.w), out);
      std::cerr << "witness pair (" << witness.v << "," << witness.w
                << ") exported; expect flow " << report.kappa_min << '\n';
    }
  }
  return 0;
}

int cmd_stats(const std::string& csv_path, int64_t churn_start_min) {
  auto rows = load_report_csv(csv_path);
  auto stats = churn_phase_stats(rows, minutes(churn_start_min));
  char line[128];
  if (stats.rv_defined) {
    std::snprintf(line, sizeof line, "samples=%ld mean=%.6f rv=%.6f\n", stats.samples,
                  stats.mean, stats.relative_variance);
  } else {
    std::snprintf(line, sizeof line, "samples=%ld mean=%.6f rv=undefined\n",
                  stats.samples, stats.mean);
  }
  std::cout << line;
  return 0;
}

int cmd_assert(const std::string& csv_path, int tolerate) {
  auto rows = load_report_csv(csv_path);
  if (rows.empty()) throw std::runtime_error("no report rows in " + csv_path);
  bool all_pass = true;
  for (const auto& row : rows) {
    all_pass = assert_resilience(row, tolerate, std::cout) && all_pass;
  }
  std::cout << (all_pass ? "PASS" : "FAIL") << '\n';
  return all_pass ? 0 : 1;
}

int cmd_plot(const std::string& dir) {
  std::vector<std::string> csvs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".csv") csvs.push_back(entry.path().string());
  }
  std::sort(csvs.begin(), csvs.end());
  if (csvs.empty()) throw std::runtime_error("no .csv files in " + dir);
  emit_plot_data(csvs, dir);
  for (const auto& path : csvs) {
    std::cout << fs::path(path).stem().string() + ".dat" << '\n';
  }
  std::cout << "plot.gp\n";
  return 0;
}

int cmd_maxflow(const std::string& dimacs_path) {
  auto problem = load_dimacs_file(dimacs_path);
  MaxFlowSolver solver(problem.nodes, problem.arcs, problem.caps);
  std::cout << "flow " << solver.max_flow(problem.source, problem.sink) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kademlia overlay simulator and vertex-connectivity analyzer"};
  app.require_subcommand(1);
  int rc = 0;

  auto* simulate = app.add_subcommand(
      "simulate", "Run the scenario matrix in a config file and analyze snapshots");
  std::string config_path;
  uint64_t seed = 0;
  std::string out_dir = "kadcon-out";
  double sim_c = 1.0;
  int64_t from_min = 0;
  int workers = 1;
  bool snapshots = false;
  simulate->add_option("--config", config_path, "scenario config file")->required();
  auto* seed_opt = simulate->add_option("--seed", seed, "override every scenario seed");
  simulate->add_option("--out", out_dir, "output directory");
  simulate->add_option("--c", sim_c, "source fraction for the analysis");
  simulate->add_option("--from-min", from_min, "analyze snapshots from this minute on");
  simulate->add_option("--workers", workers, "parallel scenario workers");
  simulate->add_flag("--snapshots", snapshots, "also write .snap files");
  simulate->callback([&] {
    rc = cmd_simulate(config_path, seed, seed_opt->count() > 0, out_dir, sim_c,
                      from_min, workers, snapshots);
  });

  auto* analyze =
      app.add_subcommand("analyze", "Connectivity report for one snapshot file");
  std::string snapshot_path;
  double c = 1.0;
  std::string dimacs_dir;
  analyze->add_option("--snapshot", snapshot_path, "snapshot file")->required();
  analyze->add_option("--c", c, "source fraction in (0,1]");
  analyze->add_option("--dimacs-out", dimacs_dir, "export the witness pair's problem");
  analyze->callback([&] { rc = cmd_analyze(snapshot_path, c, dimacs_dir); });

  auto* stats = app.add_subcommand("stats", "Churn-phase mean and relative variance");
  std::string stats_csv;
  int64_t churn_start = 120;
  stats->add_option("--csv", stats_csv, "report csv")->required();
  stats->add_option("--churn-start", churn_start, "churn phase start, minutes");
  stats->callback([&] { rc = cmd_stats(stats_csv, churn_start); });

  auto* assert_cmd =
      app.add_subcommand("assert", "Check kappa_min > a for every report row");
  std::string assert_csv;
  int tolerate = 0;
  assert_cmd->add_option("--csv", assert_csv, "report csv")->required();
  assert_cmd->add_option("--tolerate", tolerate, "attacker count a")->required();
  assert_cmd->callback([&] { rc = cmd_assert(assert_csv, tolerate); });

  auto* plot = app.add_subcommand("plot", "Emit gnuplot .dat files and a plot script");
  std::string plot_dir;
  plot->add_option("--dir", plot_dir, "directory of report csv files")->required();
  plot->callback([&] { rc = cmd_plot(plot_dir); });

  auto* maxflow = app.add_subcommand("maxflow", "Solve a DIMACS max-flow problem");
  std::string dimacs_path;
  maxflow->add_option("--dimacs", dimacs_path, "problem file")->required();
  maxflow->callback([&] { rc = cmd_maxflow(dimacs_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
