#include "kadcon/kappa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "kadcon/even_transform.hpp"

namespace kadcon {

KappaPairResult kappa_pair(const DiGraph& g, MaxFlowSolver& solver, int v, int w) {
  if (v < 0 || v >= g.n || w < 0 || w >= g.n) {
    throw std::invalid_argument("kappa_pair: vertex out of range");
  }
  if (v == w) throw std::invalid_argument("kappa_pair: v == w");
  if (g.has_edge(v, w)) return {true, 0};
  auto flow = solver.max_flow(TransformedGraph::out_vertex(v), TransformedGraph::in_vertex(w));
  return {false, static_cast<int>(flow)};
}

ConnectivityReport kappa_graph(const DiGraph& g, double c, KappaWitness* witness) {
  if (witness != nullptr) *witness = KappaWitness{};
  if (g.n < 2) throw std::invalid_argument("kappa_graph: need at least 2 vertices");
  if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("kappa_graph: c must be in (0,1]");
  ConnectivityReport report;
  report.c_used = c;
  report.n = g.n;
  report.m = g.m;
  report.reciprocity = g.m > 0 ? reciprocity(g) : 0.0;
  if (g.complete()) {
    report.complete_graph = true;
    report.kappa_min = g.n - 1;
    report.kappa_avg = g.n - 1;
    report.resilience = report.kappa_min - 1;
    return report;
  }

  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return g.d_out[a] != g.d_out[b] ? g.d_out[a] < g.d_out[b] : a < b;
  });
  auto source_count =
      std::clamp<long>(static_cast<long>(std::ceil(c * g.n)), 1, g.n);

  MaxFlowSolver solver(even_transform(g));
  int best = g.n;  // any pair's connectivity is at most n - 2
  long long sum = 0;
  long computed = 0;
  for (long i = 0; i < source_count; ++i) {
    int v = order[i];
    // A minimum-out-degree source of a non-complete graph always has at
    // least one non-adjacent partner, so `computed` ends up >= 1.
    for (int w = 0; w < g.n; ++w) {
      if (w == v) continue;
      auto pair = kappa_pair(g, solver, v, w);
      if (pair.adjacent) continue;
      if (pair.value < best || computed == 0) {
        best = pair.value;
        if (witness != nullptr) *witness = {v, w};
      }
      sum += pair.value;
      ++computed;
    }
  }
  report.kappa_min = best;
  report.kappa_avg = static_cast<double>(sum) / static_cast<double>(computed);
  report.resilience = report.kappa_min - 1;
  report.pairs_computed = computed;
  return report;
}

ConnectivityReport analyze_snapshot(const Snapshot& snap, double c, KappaWitness* witness) {
  auto report = kappa_graph(build_digraph(snap), c, witness);
  report.at = snap.at;
  return report;
}

namespace {

constexpr const char* kHeader =
    "time_min,kappa_min,kappa_avg,resilience,c_used,pairs_computed,n,m,reciprocity";

}  // namespace

void write_report_csv(const std::vector<ConnectivityReport>& rows, std::ostream& out) {
  out << kHeader << '\n';
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%lld,%d,%.6f,%d,%.6f,%ld,%d,%d,%.6f\n",
                  static_cast<long long>(r.at / kMinute), r.kappa_min, r.kappa_avg,
                  r.resilience, r.c_used, r.pairs_computed, r.n, r.m, r.reciprocity);
    out << line;
  }
}

std::string report_csv_to_string(const std::vector<ConnectivityReport>& rows) {
  std::ostringstream out;
  write_report_csv(rows, out);
  return out.str();
}

std::vector<ConnectivityReport> read_report_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("report:" + std::to_string(line_no) + ": " + what);
  };
  if (!std::getline(in, line)) {
    line_no = 1;
    fail("missing header");
  }
  line_no = 1;
  if (line != kHeader) fail("unexpected header: " + line);
  std::vector<ConnectivityReport> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    long long time_min = 0;
    ConnectivityReport r;
    char tail = 0;
    int fields = std::sscanf(line.c_str(), "%lld,%d,%lf,%d,%lf,%ld,%d,%d,%lf%c",
                             &time_min, &r.kappa_min, &r.kappa_avg, &r.resilience,
                             &r.c_used, &r.pairs_computed, &r.n, &r.m,
                             &r.reciprocity, &tail);
    if (fields != 9) fail("malformed row: " + line);
    if (time_min < 0) fail("negative time");
    if (r.kappa_min < 0) fail("negative kappa_min");
    if (r.n < 0 || r.m < 0) fail("negative counts");
    r.at = minutes(time_min);
    r.complete_graph =
        r.n >= 2 && static_cast<long>(r.m) == static_cast<long>(r.n) * (r.n - 1);
    rows.push_back(r);
  }
  return rows;
}

std::vector<ConnectivityReport> load_report_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report: " + path);
  try {
    return read_report_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_report_csv(const std::vector<ConnectivityReport>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  write_report_csv(rows, out);
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace kadcon
