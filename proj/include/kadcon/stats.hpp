#ifndef KADCON_STATS_HPP
#define KADCON_STATS_HPP

#include <iosfwd>
#include <utility>
#include <vector>

#include "kadcon/kappa.hpp"

namespace kadcon {

// Mean and relative variance (variance / mean, population variance) of the
// minimum connectivity across the churn phase. An all-zero series gets
// RV 0; a zero mean with nonzero variance leaves RV undefined.
struct ChurnPhaseStats {
  double mean = 0.0;
  double relative_variance = 0.0;
  bool rv_defined = true;
  long samples = 0;
};

// Statistics over the samples at time >= churn_start. Fewer than 2 such
// samples is an error: a variance needs at least two points.
ChurnPhaseStats churn_phase_stats(const std::vector<std::pair<SimTime, int>>& series,
                                  SimTime churn_start);
ChurnPhaseStats churn_phase_stats(const std::vector<ConnectivityReport>& reports,
                                  SimTime churn_start);

// Pass iff the network stays connected after `attackers` node removals:
// kappa_min > attackers. Prints the resilience verdict line to `out`.
bool assert_resilience(const ConnectivityReport& report, int attackers, std::ostream& out);

}  // namespace kadcon

#endif
