#ifndef KADCON_KAPPA_HPP
#define KADCON_KAPPA_HPP

#include <iosfwd>
#include <vector>

#include "kadcon/max_flow.hpp"
#include "kadcon/snapshot.hpp"

namespace kadcon {

// Pairwise vertex connectivity, or the marker that the pair is adjacent
// and therefore excluded from the graph-wide minimum.
struct KappaPairResult {
  bool adjacent = false;
  int value = 0;
};

// Connectivity summary of one snapshot graph. kappa_avg averages over the
// computed non-adjacent pairs; resilience = kappa_min - 1 is the number of
// node removals the network provably tolerates without disconnecting any
// non-adjacent pair.
struct ConnectivityReport {
  SimTime at = 0;
  int kappa_min = 0;
  double kappa_avg = 0.0;
  int resilience = -1;
  double c_used = 1.0;
  long pairs_computed = 0;
  bool complete_graph = false;
  int n = 0;
  int m = 0;
  double reciprocity = 0.0;  // 0 when the graph has no edges
};

// Connectivity of one ordered pair: max flow from v'' to w' on the
// transformed graph, or the adjacent marker. The solver must be built over
// even_transform of the same graph; its state is reused across calls.
KappaPairResult kappa_pair(const DiGraph& g, MaxFlowSolver& solver, int v, int w);

// First computed pair that attains kappa_min; stays (-1, -1) for complete
// graphs, where no flow runs.
struct KappaWitness {
  int v = -1;
  int w = -1;
};

// Graph-wide connectivity: minimum (and mean) of kappa_pair from the
// max(1, ceil(c*n)) sources of smallest out-degree (ties: ascending vertex
// index) to every other non-adjacent vertex. c = 1 computes the exact
// minimum over all ordered non-adjacent pairs. Complete graphs short-cut
// to kappa_min = n - 1 with zero flow computations.
ConnectivityReport kappa_graph(const DiGraph& g, double c, KappaWitness* witness = nullptr);

// kappa_graph plus the snapshot timestamp carried into the report.
ConnectivityReport analyze_snapshot(const Snapshot& snap, double c,
                                    KappaWitness* witness = nullptr);

// Report rows as CSV, header:
//   time_min,kappa_min,kappa_avg,resilience,c_used,pairs_computed,n,m,reciprocity
void write_report_csv(const std::vector<ConnectivityReport>& rows, std::ostream& out);
std::string report_csv_to_string(const std::vector<ConnectivityReport>& rows);
std::vector<ConnectivityReport> read_report_csv(std::istream& in);
std::vector<ConnectivityReport> load_report_csv(const std::string& path);
void save_report_csv(const std::vector<ConnectivityReport>& rows, const std::string& path);

}  // namespace kadcon

#endif
