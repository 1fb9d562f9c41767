#include "kadcon/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "kadcon/kappa.hpp"

namespace fs = std::filesystem;

namespace kadcon {

namespace {

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// A stanza of nothing but comments configures nothing.
bool has_settings(const std::string& stanza) {
  std::istringstream in(stanza);
  std::string line;
  while (std::getline(in, line)) {
    if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!blank(line)) return true;
  }
  return false;
}

// Re-anchor a stanza-local `config:<line>: ...` message to the file.
ConfigError reanchor(const ConfigError& e, int stanza_start) {
  std::string msg = e.what();
  int local = 0;
  char tail = 0;
  if (std::sscanf(msg.c_str(), "config:%d%c", &local, &tail) == 2 && tail == ':') {
    size_t colon = msg.find(':', msg.find(':') + 1);
    return ConfigError("config:" + std::to_string(stanza_start + local - 1) +
                       msg.substr(colon));
  }
  return e;
}

}  // namespace

std::vector<ScenarioConfig> parse_matrix_configs(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);

  std::vector<ScenarioConfig> configs;
  size_t i = 0;
  while (i < lines.size()) {
    if (blank(lines[i])) {
      ++i;
      continue;
    }
    size_t start = i;
    std::string stanza;
    while (i < lines.size() && !blank(lines[i])) {
      stanza += lines[i];
      stanza += '\n';
      ++i;
    }
    if (!has_settings(stanza)) continue;
    std::istringstream chunk(stanza);
    try {
      configs.push_back(parse_config(chunk));
    } catch (const ConfigError& e) {
      throw reanchor(e, static_cast<int>(start) + 1);
    }
  }
  if (configs.empty()) throw ConfigError("config:1: no scenarios found");
  return configs;
}

std::vector<ScenarioConfig> load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  try {
    return parse_matrix_configs(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

namespace {

void run_one(const ScenarioConfig& cfg, const ExperimentMatrix& matrix,
             const std::string& tag) {
  auto result = run_scenario(cfg);
  fs::path dir(matrix.output_dir);
  std::vector<ConnectivityReport> rows;
  for (const auto& snap : result.snapshots) {
    if (matrix.write_snapshots) {
      auto name = tag + "_t" + std::to_string(snap.at / kMinute) + ".snap";
      save_snapshot_file(snap, (dir / name).string());
    }
    if (snap.at < minutes(matrix.analysis.from_min)) continue;
    // A graph needs two vertices; snapshots of a churned-away network
    // carry no measurable structure and produce no row.
    if (snap.size() < 2) continue;
    rows.push_back(analyze_snapshot(snap, matrix.analysis.c));
  }
  save_report_csv(rows, (dir / (tag + ".csv")).string());
}

}  // namespace

MatrixOutcome run_matrix(const ExperimentMatrix& matrix) {
  if (matrix.configs.empty()) throw std::invalid_argument("run_matrix: no scenarios");
  if (matrix.workers < 1) throw std::invalid_argument("run_matrix: workers must be >= 1");
  if (!(matrix.analysis.c > 0.0 && matrix.analysis.c <= 1.0)) {
    throw std::invalid_argument("run_matrix: c must be in (0,1]");
  }
  if (matrix.output_dir.empty()) throw std::invalid_argument("run_matrix: no output dir");

  MatrixOutcome outcome;
  outcome.entries.resize(matrix.configs.size());
  std::set<std::string> seen;
  for (size_t i = 0; i < matrix.configs.size(); ++i) {
    matrix.configs[i].validate();
    auto tag = scenario_tag(matrix.configs[i]);
    if (!seen.insert(tag).second) {
      throw std::invalid_argument("run_matrix: duplicate scenario tag " + tag);
    }
    outcome.entries[i].tag = tag;
  }
  fs::create_directories(matrix.output_dir);

  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= matrix.configs.size()) return;
      auto& entry = outcome.entries[i];
      try {
        run_one(matrix.configs[i], matrix, entry.tag);
        entry.ok = true;
      } catch (const std::exception& e) {
        entry.ok = false;
        entry.error = e.what();
      }
    }
  };
  size_t thread_count =
      std::min<size_t>(static_cast<size_t>(matrix.workers), matrix.configs.size());
  std::vector<std::thread> pool;
  for (size_t i = 1; i < thread_count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ofstream manifest(fs::path(matrix.output_dir) / "manifest.txt",
                         std::ios::binary);
  if (!manifest) throw std::runtime_error("run_matrix: cannot write manifest");
  for (const auto& entry : outcome.entries) {
    if (entry.ok) {
      manifest << entry.tag << " ok\n";
    } else {
      manifest << entry.tag << " FAILED " << entry.error << '\n';
    }
  }
  return outcome;
}

void emit_plot_data(const std::vector<std::string>& csv_paths, const std::string& out_dir) {
  if (csv_paths.empty()) throw std::invalid_argument("emit_plot_data: no csv files");
  fs::create_directories(out_dir);
  std::string script =
      "set terminal pngcairo size 1200,800\n"
      "set output 'connectivity.png'\n"
      "set xlabel 'time [min]'\n"
      "set ylabel 'vertex connectivity'\n"
      "set key outside right\n"
      "plot \\\n";
  for (size_t i = 0; i < csv_paths.size(); ++i) {
    auto rows = load_report_csv(csv_paths[i]);
    auto stem = fs::path(csv_paths[i]).stem().string();
    std::ofstream dat(fs::path(out_dir) / (stem + ".dat"), std::ios::binary);
    if (!dat) throw std::runtime_error("emit_plot_data: cannot write " + stem + ".dat");
    dat << "# time_min kappa_min kappa_avg\n";
    char line[96];
    for (const auto& r : rows) {
      std::snprintf(line, sizeof line, "%lld %d %.6f\n",
                    static_cast<long long>(r.at / kMinute), r.kappa_min, r.kappa_avg);
      dat << line;
    }
    if (!dat.flush()) throw std::runtime_error("emit_plot_data: write failed");
    script += "  '" + stem + ".dat' using 1:2 with linespoints title '" + stem +
              " min', \\\n";
    script += "  '" + stem + ".dat' using 1:3 with lines dashtype 2 title '" + stem +
              " avg'";
    script += i + 1 < csv_paths.size() ? ", \\\n" : "\n";
  }
  std::ofstream gp(fs::path(out_dir) / "plot.gp", std::ios::binary);
  if (!gp) throw std::runtime_error("emit_plot_data: cannot write plot.gp");
  gp << script;
  if (!gp.flush()) throw std::runtime_error("emit_plot_data: write failed");
}

}  // namespace kadcon
