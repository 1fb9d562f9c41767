#ifndef KADCON_ENGINE_HPP
#define KADCON_ENGINE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "kadcon/lookup.hpp"
#include "kadcon/node.hpp"
#include "kadcon/sim_time.hpp"

namespace kadcon {

struct NodeIdHash {
  size_t operator()(const NodeId& id) const {
    // FNV-1a over the id bytes
    uint64_t h = 1469598103934665603ull;
    const uint8_t* p = id.data();
    for (int i = 0; i < id.nbytes(); ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

struct EngineParams {
  int bits = 160;
  int k = 20;
  int alpha = 3;
  int staleness = 5;
  double loss_p = 0.0;  // one-way drop probability, applied per message
  SimTime latency_min = 50 * kMillisecond;
  SimTime latency_max = 200 * kMillisecond;
  SimTime request_timeout = 10 * kSecond;
  SimTime refresh_period = 0;  // 0 disables periodic bucket refreshes
  uint64_t seed = 1;
};

struct EngineStats {
  uint64_t messages_sent = 0;
  uint64_t messages_dropped = 0;   // lost in transit
  uint64_t messages_delivered = 0;
  uint64_t requests_timed_out = 0;
  uint64_t lookups_started = 0;
  uint64_t lookups_completed = 0;
  uint64_t disseminations_started = 0;
  uint64_t disseminations_completed = 0;
  uint64_t stores_acked = 0;
};

// Deterministic single-threaded event loop: virtual clock, message
// transport with loss and latency, request timeouts, and the drivers that
// turn protocol state machines (lookups, disseminations, joins, refreshes)
// into scheduled events. Identical parameters and seed reproduce identical
// event sequences; ties in time are broken by scheduling order.
class Engine {
 public:
  using Task = std::function<void(Engine&)>;
  using LookupDone = std::function<void(const std::vector<NodeId>&)>;
  using DissemDone = std::function<void(int acks)>;

  explicit Engine(EngineParams params);

  SimTime now() const { return now_; }
  Rng& rng() { return rng_; }
  const EngineParams& params() const { return params_; }
  const EngineStats& stats() const { return stats_; }

  // Creates a live node without any join traffic. Draws a fresh id unless
  // one is given; collisions with live ids are redrawn.
  NodeId add_node(std::optional<NodeId> id = std::nullopt);

  // Random id not held by any live node.
  NodeId draw_fresh_id();

  // Standard join: adopt the bootstrap contact, then look up the own id.
  // Without a bootstrap the node starts as a singleton.
  void join(const NodeId& id, std::optional<NodeId> bootstrap);

  // Silent departure: no goodbye message, contacts elsewhere turn stale.
  void leave(const NodeId& id);

  uint64_t start_lookup(const NodeId& initiator, const NodeId& target, LookupDone done = {});
  uint64_t start_dissemination(const NodeId& initiator, const NodeId& key,
                               std::vector<uint8_t> payload, DissemDone done = {});
  void start_refresh(const NodeId& id);

  void schedule(SimTime at, Task task);

  // Processes every event up to and including `t`, then parks the clock at
  // `t`. Handlers may only schedule into the future.
  void run_until(SimTime t);

  Node* find_node(const NodeId& id);
  const Node* find_node(const NodeId& id) const;
  const std::vector<NodeId>& alive_ids() const { return alive_ids_; }
  size_t alive_count() const { return alive_ids_.size(); }
  NodeId random_alive(Rng& rng) const;

  // One-way loss draw for a single message; exposed for the loss-model
  // tests.
  bool loss_drop(Rng& rng) const { return params_.loss_p > 0 && rng_unit(rng) < params_.loss_p; }

 private:
  struct LookupCtx {
    uint64_t id;
  };
  struct StoreCtx {
    uint64_t dissemination;
  };
  struct ProbeCtx {};  // head ping; the node tracks the candidate
  using RequestCtx = std::variant<LookupCtx, StoreCtx, ProbeCtx>;

  struct Pending {
    NodeId from;
    NodeId to;
    RequestCtx ctx;
  };

  struct EvDeliver {
    Message msg;
  };
  struct EvTimeout {
    uint64_t request_id;
  };
  struct EvTask {
    Task fn;
  };
  struct Event {
    SimTime at;
    uint64_t seq;
    std::variant<EvDeliver, EvTimeout, EvTask> payload;
  };
  // Heap comparator: earliest time first, scheduling order breaks ties.
  struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
      return a.at != b.at ? a.at > b.at : a.seq > b.seq;
    }
  };

  struct LookupRun {
    NodeId initiator;
    Lookup machine;
    LookupDone done;
  };
  struct DissemRun {
    NodeId initiator;
    NodeId key;
    std::vector<uint8_t> payload;
    int outstanding = 0;
    int acks = 0;
    bool lookup_done = false;
    DissemDone done;
  };

  void push_event(SimTime at, std::variant<EvDeliver, EvTimeout, EvTask> payload);
  SimTime draw_latency();
  uint64_t send_request(const NodeId& from, const NodeId& to, Message msg, RequestCtx ctx);
  void send_response(Message msg);
  void send_probe(const NodeId& owner, const HeadProbe& probe);
  void handle_deliver(Message& msg);
  void handle_timeout(uint64_t request_id);
  void advance_lookup(uint64_t lookup_id);
  void finish_dissemination_if_done(uint64_t dissem_id);
  void note_contact_with_probe(Node& node, const NodeId& peer);
  void schedule_next_refresh(const NodeId& id);

  EngineParams params_;
  Rng rng_;
  SimTime now_ = 0;
  uint64_t next_seq_ = 0;
  uint64_t next_request_id_ = 1;
  uint64_t next_lookup_id_ = 1;
  uint64_t next_dissem_id_ = 1;
  std::vector<Event> events_;  // binary heap under EventAfter
  std::unordered_map<NodeId, std::unique_ptr<Node>, NodeIdHash> nodes_;
  std::vector<NodeId> alive_ids_;  // sorted ascending
  std::unordered_map<uint64_t, Pending> pending_;
  std::unordered_map<uint64_t, LookupRun> lookups_;
  std::unordered_map<uint64_t, DissemRun> dissems_;
  EngineStats stats_;
};

}  // namespace kadcon

#endif
