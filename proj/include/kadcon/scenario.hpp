#ifndef KADCON_SCENARIO_HPP
#define KADCON_SCENARIO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kadcon/engine.hpp"
#include "kadcon/snapshot.hpp"

namespace kadcon {

enum class LossLevel { none, low, medium, high };

// One-way drop probability per level.
double loss_probability(LossLevel level);
const char* loss_name(LossLevel level);
LossLevel loss_from_name(const std::string& name);

// Churn intensity per simulated minute. The standard labels read
// additions/removals: "0/1" shrinks the network by one node a minute,
// "1/1" and "10/10" hold the size while recycling members.
struct ChurnSpec {
  int additions = 0;
  int removals = 0;

  bool active() const { return additions > 0 || removals > 0; }
  bool operator==(const ChurnSpec&) const = default;
};

std::string churn_name(const ChurnSpec& churn);            // "none" or "A/R"
ChurnSpec churn_from_name(const std::string& name);

// The eight experiment dimensions plus seed and timing.
struct ScenarioConfig {
  int size = 250;
  ChurnSpec churn;
  bool traffic = false;
  LossLevel loss = LossLevel::none;
  int k = 20;
  int alpha = 3;
  int bits = 160;
  std::optional<int> staleness;  // unset: s=1 under pure churn, else s=5
  uint64_t seed = 1;
  int duration_min = 180;
  int snapshot_interval_min = 10;

  // The staleness default is coupled to the scenario: churn without
  // message loss uses s=1 so stale contacts vanish on first failure;
  // any loss (or no churn) uses the protocol default s=5.
  int effective_staleness() const;
  void validate() const;  // throws ConfigError

  bool operator==(const ScenarioConfig&) const = default;
};

// Tag encoding all dimensions plus seed,
// e.g. `n250_c10-10_traffic_lnone_k20_a3_b160_s1_seed7`.
std::string scenario_tag(const ScenarioConfig& cfg);

// Flat key=value text; `#` starts a comment. Unknown keys are errors.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config_file(const std::string& path);
std::string format_config(const ScenarioConfig& cfg);

// Setup joins happen uniformly in [0, 30) minutes; churn starts at
// minute 120 and runs until the end.
constexpr int kSetupMinutes = 30;
constexpr int kChurnStartMinute = 120;
constexpr SimTime kRefreshPeriod = 60 * kMinute;

// Schedules this minute's churn: `removals` silent departures of uniform
// victims and `additions` fresh joins with random live bootstrap nodes,
// each at an independent uniform instant within the current minute.
void churn_step(Engine& engine, const ChurnSpec& churn);

// Schedules 10 lookups of random targets plus 1 dissemination of a random
// key for every alive node, at uniform instants within the current minute.
// Returns the number of procedures scheduled (11 per node).
int traffic_step(Engine& engine);

struct ScenarioResult {
  std::vector<Snapshot> snapshots;  // one per interval, ascending time
  EngineStats stats;
  int procedures_scheduled = 0;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

}  // namespace kadcon

#endif
