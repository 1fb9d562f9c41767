#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kadcon/experiment.hpp"
#include "kadcon/kappa.hpp"
#include "kadcon/stats.hpp"

namespace py = pybind11;
using namespace kadcon;

namespace {

std::vector<std::pair<std::string, std::vector<std::string>>> entries_as_hex(
    const Snapshot& snap) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  out.reserve(snap.entries.size());
  for (const auto& [id, contacts] : snap.entries) {
    std::vector<std::string> hex;
    hex.reserve(contacts.size());
    for (const auto& c : contacts) hex.push_back(c.to_hex());
    out.emplace_back(id.to_hex(), std::move(hex));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_kadcon, m) {
  m.doc() = "Kademlia overlay simulator and vertex-connectivity analyzer";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("size", &ScenarioConfig::size)
      .def_readwrite("traffic", &ScenarioConfig::traffic)
      .def_readwrite("k", &ScenarioConfig::k)
      .def_readwrite("alpha", &ScenarioConfig::alpha)
      .def_readwrite("bits", &ScenarioConfig::bits)
      .def_readwrite("staleness", &ScenarioConfig::staleness)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("duration_min", &ScenarioConfig::duration_min)
      .def_readwrite("snapshot_interval_min", &ScenarioConfig::snapshot_interval_min)
      .def_property(
          "churn", [](const ScenarioConfig& cfg) { return churn_name(cfg.churn); },
          [](ScenarioConfig& cfg, const std::string& name) {
            cfg.churn = churn_from_name(name);
          })
      .def_property(
          "loss", [](const ScenarioConfig& cfg) { return std::string(loss_name(cfg.loss)); },
          [](ScenarioConfig& cfg, const std::string& name) {
            cfg.loss = loss_from_name(name);
          })
      .def("effective_staleness", &ScenarioConfig::effective_staleness)
      .def("validate", &ScenarioConfig::validate)
      .def("__repr__",
           [](const ScenarioConfig& cfg) { return "<ScenarioConfig " + scenario_tag(cfg) + ">"; });

  py::class_<EngineStats>(m, "EngineStats")
      .def_readonly("messages_sent", &EngineStats::messages_sent)
      .def_readonly("messages_dropped", &EngineStats::messages_dropped)
      .def_readonly("messages_delivered", &EngineStats::messages_delivered)
      .def_readonly("requests_timed_out", &EngineStats::requests_timed_out)
      .def_readonly("lookups_started", &EngineStats::lookups_started)
      .def_readonly("lookups_completed", &EngineStats::lookups_completed)
      .def_readonly("disseminations_started", &EngineStats::disseminations_started)
      .def_readonly("disseminations_completed", &EngineStats::disseminations_completed)
      .def_readonly("stores_acked", &EngineStats::stores_acked);

  py::class_<Snapshot>(m, "Snapshot")
      .def_property_readonly("at_min",
                             [](const Snapshot& s) { return s.at / kMinute; })
      .def_readonly("bits", &Snapshot::bits)
      .def_property_readonly("entries", &entries_as_hex)
      .def("__len__", &Snapshot::size)
      .def("__repr__", [](const Snapshot& s) {
        return "<Snapshot t=" + std::to_string(s.at / kMinute) +
               "min n=" + std::to_string(s.size()) + ">";
      });

  py::class_<ConnectivityReport>(m, "ConnectivityReport")
      .def_property_readonly("at_min",
                             [](const ConnectivityReport& r) { return r.at / kMinute; })
      .def_readonly("kappa_min", &ConnectivityReport::kappa_min)
      .def_readonly("kappa_avg", &ConnectivityReport::kappa_avg)
      .def_readonly("resilience", &ConnectivityReport::resilience)
      .def_readonly("c_used", &ConnectivityReport::c_used)
      .def_readonly("pairs_computed", &ConnectivityReport::pairs_computed)
      .def_readonly("complete_graph", &ConnectivityReport::complete_graph)
      .def_readonly("n", &ConnectivityReport::n)
      .def_readonly("m", &ConnectivityReport::m)
      .def_readonly("reciprocity", &ConnectivityReport::reciprocity)
      .def("__repr__", [](const ConnectivityReport& r) {
        return "<ConnectivityReport t=" + std::to_string(r.at / kMinute) +
               "min kappa_min=" + std::to_string(r.kappa_min) + ">";
      });

  py::class_<ChurnPhaseStats>(m, "ChurnPhaseStats")
      .def_readonly("mean", &ChurnPhaseStats::mean)
      .def_readonly("relative_variance", &ChurnPhaseStats::relative_variance)
      .def_readonly("rv_defined", &ChurnPhaseStats::rv_defined)
      .def_readonly("samples", &ChurnPhaseStats::samples);

  m.def("parse_config", [](const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
  });
  m.def("format_config", &format_config);
  m.def("scenario_tag", &scenario_tag);

  m.def(
      "run_scenario",
      [](const ScenarioConfig& cfg) {
        auto result = run_scenario(cfg);
        return py::make_tuple(result.snapshots, result.stats);
      },
      py::arg("config"), "Returns (snapshots, engine_stats).");

  m.def("snapshot_to_text", &snapshot_to_string);
  m.def("snapshot_from_text", [](const std::string& text) {
    std::istringstream in(text);
    return read_snapshot(in);
  });
  m.def("load_snapshot", &load_snapshot_file);
  m.def("save_snapshot", &save_snapshot_file);

  m.def(
      "analyze_snapshot",
      [](const Snapshot& snap, double c) { return analyze_snapshot(snap, c); },
      py::arg("snapshot"), py::arg("c") = 1.0);
  m.def("load_report_csv", &load_report_csv);

  m.def(
      "churn_phase_stats",
      [](const std::vector<std::pair<int64_t, int>>& series_min, int64_t churn_start_min) {
        std::vector<std::pair<SimTime, int>> series;
        series.reserve(series_min.size());
        for (auto [at_min, kappa] : series_min) series.emplace_back(minutes(at_min), kappa);
        return churn_phase_stats(series, minutes(churn_start_min));
      },
      py::arg("series"), py::arg("churn_start_min"),
      "series: list of (time_min, kappa_min) pairs.");

  m.def(
      "assert_resilience",
      [](const ConnectivityReport& report, int attackers) {
        std::ostringstream out;
        bool pass = assert_resilience(report, attackers, out);
        return py::make_tuple(pass, out.str());
      },
      py::arg("report"), py::arg("attackers"), "Returns (pass, verdict_line).");

  m.def(
      "run_matrix",
      [](const std::vector<ScenarioConfig>& configs, const std::string& output_dir,
         double c, int64_t from_min, int workers, bool write_snapshots) {
        ExperimentMatrix matrix;
        matrix.configs = configs;
        matrix.output_dir = output_dir;
        matrix.analysis.c = c;
        matrix.analysis.from_min = from_min;
        matrix.workers = workers;
        matrix.write_snapshots = write_snapshots;
        auto outcome = run_matrix(matrix);
        std::vector<std::tuple<std::string, bool, std::string>> entries;
        entries.reserve(outcome.entries.size());
        for (const auto& e : outcome.entries) entries.emplace_back(e.tag, e.ok, e.error);
        return entries;
      },
      py::arg("configs"), py::arg("output_dir"), py::arg("c") = 1.0,
      py::arg("from_min") = 0, py::arg("workers") = 1,
      py::arg("write_snapshots") = false,
      "Returns a list of (tag, ok, error) in config order.");

  m.def(
      "bucket_index",
      [](const std::string& a_hex, const std::string& b_hex, int bits) {
        return bucket_index(NodeId::from_hex(a_hex, bits), NodeId::from_hex(b_hex, bits));
      },
      py::arg("a_hex"), py::arg("b_hex"), py::arg("bits"));
}
