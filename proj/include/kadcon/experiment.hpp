#ifndef KADCON_EXPERIMENT_HPP
#define KADCON_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "kadcon/scenario.hpp"

namespace kadcon {

// Which snapshots get analyzed and how thoroughly.
struct AnalysisOptions {
  double c = 1.0;        // source fraction passed to kappa_graph
  int64_t from_min = 0;  // skip snapshots earlier than this
};

// A batch of scenarios sharing one analysis setting and output directory.
struct ExperimentMatrix {
  std::vector<ScenarioConfig> configs;
  AnalysisOptions analysis;
  std::string output_dir;
  int workers = 1;
  bool write_snapshots = false;  // also keep `<tag>_t<min>.snap` files
};

// Splits flat key=value text into blank-line-separated stanzas, one
// scenario each. Errors keep file-global line numbers.
std::vector<ScenarioConfig> parse_matrix_configs(std::istream& in);
std::vector<ScenarioConfig> load_matrix_file(const std::string& path);

struct MatrixEntry {
  std::string tag;
  bool ok = false;
  std::string error;
};

struct MatrixOutcome {
  std::vector<MatrixEntry> entries;  // config order

  bool all_ok() const {
    for (const auto& e : entries) {
      if (!e.ok) return false;
    }
    return true;
  }
};

// Runs every scenario (dispatched across `workers` threads), analyzes the
// selected snapshots, and writes one `<scenario-tag>.csv` per config plus
// a `manifest.txt` summary into output_dir. A failing scenario is recorded
// in the manifest and does not disturb the others. Outputs are
// byte-identical across reruns regardless of worker count.
MatrixOutcome run_matrix(const ExperimentMatrix& matrix);

// One `<stem>.dat` (columns: time_min kappa_min kappa_avg) per report CSV
// plus a gnuplot script `plot.gp` drawing min and avg curves for each.
void emit_plot_data(const std::vector<std::string>& csv_paths, const std::string& out_dir);

}  // namespace kadcon

#endif
