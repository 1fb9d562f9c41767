#include "kadcon/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace kadcon {

double loss_probability(LossLevel level) {
  switch (level) {
    case LossLevel::none: return 0.0;
    case LossLevel::low: return 0.025;
    case LossLevel::medium: return 0.134;
    case LossLevel::high: return 0.293;
  }
  throw std::logic_error("unreachable loss level");
}

const char* loss_name(LossLevel level) {
  switch (level) {
    case LossLevel::none: return "none";
    case LossLevel::low: return "low";
    case LossLevel::medium: return "medium";
    case LossLevel::high: return "high";
  }
  throw std::logic_error("unreachable loss level");
}

LossLevel loss_from_name(const std::string& name) {
  if (name == "none") return LossLevel::none;
  if (name == "low") return LossLevel::low;
  if (name == "medium") return LossLevel::medium;
  if (name == "high") return LossLevel::high;
  throw ConfigError("unknown loss level `" + name + "` (none|low|medium|high)");
}

std::string churn_name(const ChurnSpec& churn) {
  if (!churn.active()) return "none";
  return std::to_string(churn.additions) + "/" + std::to_string(churn.removals);
}

ChurnSpec churn_from_name(const std::string& name) {
  if (name == "none") return ChurnSpec{};
  size_t slash = name.find('/');
  if (slash == std::string::npos) {
    throw ConfigError("churn must be `none` or `<additions>/<removals>`, got `" + name + "`");
  }
  ChurnSpec churn;
  try {
    size_t used_a = 0, used_r = 0;
    std::string a = name.substr(0, slash), r = name.substr(slash + 1);
    churn.additions = std::stoi(a, &used_a);
    churn.removals = std::stoi(r, &used_r);
    if (used_a != a.size() || used_r != r.size()) throw std::invalid_argument("trailing junk");
  } catch (const std::exception&) {
    throw ConfigError("churn must be `none` or `<additions>/<removals>`, got `" + name + "`");
  }
  if (churn.additions < 0 || churn.removals < 0) {
    throw ConfigError("churn rates must be non-negative, got `" + name + "`");
  }
  return churn;
}

int ScenarioConfig::effective_staleness() const {
  if (staleness) return *staleness;
  if (churn.active() && loss == LossLevel::none) return 1;
  return 5;
}

void ScenarioConfig::validate() const {
  if (size < 2) throw ConfigError("size must be >= 2");
  if (k < 1) throw ConfigError("k must be >= 1");
  if (alpha < 1) throw ConfigError("alpha must be >= 1");
  if (bits < 8 || bits > NodeId::kMaxBits || bits % 8 != 0) {
    throw ConfigError("bits must be a multiple of 8 in [8, " + std::to_string(NodeId::kMaxBits) +
                      "]");
  }
  if (staleness && *staleness < 1) throw ConfigError("staleness must be >= 1");
  if (duration_min < 1) throw ConfigError("duration must be >= 1 minute");
  if (snapshot_interval_min < 1) throw ConfigError("snapshot_interval must be >= 1 minute");
}

std::string scenario_tag(const ScenarioConfig& cfg) {
  std::string churn = churn_name(cfg.churn);
  std::replace(churn.begin(), churn.end(), '/', '-');
  std::ostringstream os;
  os << "n" << cfg.size << "_c" << churn << "_" << (cfg.traffic ? "traffic" : "notraffic") << "_l"
     << loss_name(cfg.loss) << "_k" << cfg.k << "_a" << cfg.alpha << "_b" << cfg.bits << "_s"
     << cfg.effective_staleness() << "_seed" << cfg.seed;
  return os.str();
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config:" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config:" + std::to_string(lineno) + ": empty key or value");
    }
    try {
      if (key == "size") {
        cfg.size = std::stoi(value);
      } else if (key == "churn") {
        cfg.churn = churn_from_name(value);
      } else if (key == "traffic") {
        if (value == "on" || value == "true" || value == "yes" || value == "1") {
          cfg.traffic = true;
        } else if (value == "off" || value == "false" || value == "no" || value == "0") {
          cfg.traffic = false;
        } else {
          throw ConfigError("traffic must be on/off");
        }
      } else if (key == "loss") {
        cfg.loss = loss_from_name(value);
      } else if (key == "k") {
        cfg.k = std::stoi(value);
      } else if (key == "alpha") {
        cfg.alpha = std::stoi(value);
      } else if (key == "bits" || key == "b") {
        cfg.bits = std::stoi(value);
      } else if (key == "staleness" || key == "s") {
        cfg.staleness = std::stoi(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "duration") {
        cfg.duration_min = std::stoi(value);
      } else if (key == "snapshot_interval") {
        cfg.snapshot_interval_min = std::stoi(value);
      } else {
        throw ConfigError("unknown key `" + key + "`");
      }
    } catch (const ConfigError& e) {
      throw ConfigError("config:" + std::to_string(lineno) + ": " + e.what());
    } catch (const std::exception&) {
      throw ConfigError("config:" + std::to_string(lineno) + ": bad value `" + value +
                        "` for key `" + key + "`");
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

std::string format_config(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "size = " << cfg.size << "\n";
  os << "churn = " << churn_name(cfg.churn) << "\n";
  os << "traffic = " << (cfg.traffic ? "on" : "off") << "\n";
  os << "loss = " << loss_name(cfg.loss) << "\n";
  os << "k = " << cfg.k << "\n";
  os << "alpha = " << cfg.alpha << "\n";
  os << "bits = " << cfg.bits << "\n";
  os << "staleness = " << cfg.effective_staleness() << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "duration = " << cfg.duration_min << "\n";
  os << "snapshot_interval = " << cfg.snapshot_interval_min << "\n";
  return os.str();
}

void churn_step(Engine& engine, const ChurnSpec& churn) {
  SimTime base = engine.now();
  // Removals first, then additions; victims and bootstrap choices are
  // drawn when the event fires so same-minute interleavings stay honest.
  for (int i = 0; i < churn.removals; ++i) {
    SimTime at = base + static_cast<SimTime>(rng_below(engine.rng(), kMinute));
    engine.schedule(at, [](Engine& e) {
      if (e.alive_count() == 0) return;  // nothing left to remove
      e.leave(e.random_alive(e.rng()));
    });
  }
  for (int i = 0; i < churn.additions; ++i) {
    SimTime at = base + static_cast<SimTime>(rng_below(engine.rng(), kMinute));
    engine.schedule(at, [](Engine& e) {
      std::optional<NodeId> boot;
      if (e.alive_count() > 0) boot = e.random_alive(e.rng());
      e.join(e.draw_fresh_id(), boot);
    });
  }
}

int traffic_step(Engine& engine) {
  SimTime base = engine.now();
  int scheduled = 0;
  for (const NodeId& id : engine.alive_ids()) {
    for (int i = 0; i < 10; ++i) {
      SimTime at = base + static_cast<SimTime>(rng_below(engine.rng(), kMinute));
      NodeId target = random_id(engine.rng(), engine.params().bits);
      engine.schedule(at, [id, target](Engine& e) {
        if (e.find_node(id)) e.start_lookup(id, target);
      });
      ++scheduled;
    }
    SimTime at = base + static_cast<SimTime>(rng_below(engine.rng(), kMinute));
    NodeId key = random_id(engine.rng(), engine.params().bits);
    engine.schedule(at, [id, key](Engine& e) {
      if (e.find_node(id)) e.start_dissemination(id, key, {0x01}, {});
    });
    ++scheduled;
  }
  return scheduled;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  EngineParams ep;
  ep.bits = cfg.bits;
  ep.k = cfg.k;
  ep.alpha = cfg.alpha;
  ep.staleness = cfg.effective_staleness();
  ep.loss_p = loss_probability(cfg.loss);
  ep.refresh_period = kRefreshPeriod;
  ep.seed = cfg.seed;
  Engine engine(ep);

  ScenarioResult result;
  std::string tag = scenario_tag(cfg);

  // Scheduling order fixes same-instant ties: a snapshot at minute m sees
  // the network before any churn or traffic drawn for that minute fires.
  for (int m = cfg.snapshot_interval_min; m <= cfg.duration_min; m += cfg.snapshot_interval_min) {
    engine.schedule(minutes(m), [&result, tag](Engine& e) {
      result.snapshots.push_back(take_snapshot(e, e.now(), tag));
    });
  }
  if (cfg.churn.active()) {
    for (int m = kChurnStartMinute; m < cfg.duration_min; ++m) {
      engine.schedule(minutes(m), [churn = cfg.churn](Engine& e) { churn_step(e, churn); });
    }
  }
  if (cfg.traffic) {
    for (int m = 0; m < cfg.duration_min; ++m) {
      engine.schedule(minutes(m),
                      [&result](Engine& e) { result.procedures_scheduled += traffic_step(e); });
    }
  }
  // Setup joins spread over the first 30 minutes — or over the whole run
  // when it is shorter, so even a tiny smoke scenario assembles fully.
  SimTime join_window = minutes(std::min(kSetupMinutes, cfg.duration_min));
  for (int i = 0; i < cfg.size; ++i) {
    SimTime at = static_cast<SimTime>(rng_below(engine.rng(), join_window));
    engine.schedule(at, [](Engine& e) {
      std::optional<NodeId> boot;
      if (e.alive_count() > 0) boot = e.random_alive(e.rng());
      e.join(e.draw_fresh_id(), boot);
    });
  }

  engine.run_until(minutes(cfg.duration_min));
  result.stats = engine.stats();
  return result;
}

}  // namespace kadcon
