#ifndef KADCON_NODE_HPP
#define KADCON_NODE_HPP

#include <map>
#include <optional>
#include <vector>

#include "kadcon/message.hpp"
#include "kadcon/routing_table.hpp"

namespace kadcon {

// Request to probe a bucket head before anything gets evicted: `candidate`
// wanted the slot, `head` is the least-recently-seen holder.
struct HeadProbe {
  NodeId head;
  NodeId candidate;
};

struct HandleResult {
  std::vector<Message> responses;
  std::optional<HeadProbe> probe;
};

// Protocol state of one simulated node. Dead nodes (alive=false) neither
// send nor answer; the transport drops messages addressed to them.
class Node {
 public:
  Node(NodeId id, int k, int staleness_limit);

  const NodeId& id() const { return id_; }
  bool alive() const { return alive_; }
  void set_alive(bool v) { alive_ = v; }
  RoutingTable& table() { return table_; }
  const RoutingTable& table() const { return table_; }
  int staleness_limit() const { return staleness_limit_; }

  // Records a sighting of a peer. When the peer's bucket is full, returns
  // the head to ping, remembering the rejected candidate until the probe
  // resolves. At most one probe per head is outstanding; further candidates
  // for the same head are dropped.
  std::optional<HeadProbe> note_contact(const NodeId& peer, SimTime now);

  // Handles one received message. Requests produce a response; responses
  // only update the table (the transport layer routes their content).
  HandleResult handle_message(const Message& msg, SimTime now);

  // A probe answered: the head is alive, the stored candidate loses.
  void head_probe_ok(const NodeId& head);

  // One failed communication with a peer. If the staleness machinery
  // removes a probed head, the remembered candidate takes the free slot.
  FailureOutcome on_peer_failure(const NodeId& peer, SimTime now);

  bool has_stored(const NodeId& key) const { return store_.count(key) > 0; }
  size_t store_size() const { return store_.size(); }
  int max_failure_count() const;

 private:
  NodeId id_;
  RoutingTable table_;
  int staleness_limit_;
  bool alive_ = true;
  std::map<NodeId, std::vector<uint8_t>> store_;
  std::map<NodeId, NodeId> pending_probes_;  // head -> waiting candidate
};

}  // namespace kadcon

#endif
