#include "kadcon/stats.hpp"

#include <ostream>
#include <stdexcept>

namespace kadcon {

ChurnPhaseStats churn_phase_stats(const std::vector<std::pair<SimTime, int>>& series,
                                  SimTime churn_start) {
  double sum = 0.0;
  long count = 0;
  for (const auto& [at, kappa] : series) {
    if (at < churn_start) continue;
    sum += kappa;
    ++count;
  }
  if (count < 2) {
    throw std::invalid_argument("churn_phase_stats: need at least 2 churn-phase samples");
  }
  ChurnPhaseStats stats;
  stats.samples = count;
  stats.mean = sum / static_cast<double>(count);
  double squares = 0.0;
  for (const auto& [at, kappa] : series) {
    if (at < churn_start) continue;
    double d = kappa - stats.mean;
    squares += d * d;
  }
  double variance = squares / static_cast<double>(count);
  if (stats.mean != 0.0) {
    stats.relative_variance = variance / stats.mean;
  } else if (variance == 0.0) {
    stats.relative_variance = 0.0;
  } else {
    stats.rv_defined = false;
  }
  return stats;
}

ChurnPhaseStats churn_phase_stats(const std::vector<ConnectivityReport>& reports,
                                  SimTime churn_start) {
  std::vector<std::pair<SimTime, int>> series;
  series.reserve(reports.size());
  for (const auto& r : reports) series.emplace_back(r.at, r.kappa_min);
  return churn_phase_stats(series, churn_start);
}

bool assert_resilience(const ConnectivityReport& report, int attackers, std::ostream& out) {
  bool pass = report.kappa_min > attackers;
  out << "t=" << report.at / kMinute << "min kappa_min=" << report.kappa_min
      << " r=" << report.kappa_min - 1 << " tolerate=" << attackers << " -> "
      << (pass ? "pass" : "FAIL") << '\n';
  return pass;
}

}  // namespace kadcon
