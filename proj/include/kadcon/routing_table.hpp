#ifndef KADCON_ROUTING_TABLE_HPP
#define KADCON_ROUTING_TABLE_HPP

#include <optional>
#include <vector>

#include "kadcon/node_id.hpp"
#include "kadcon/sim_time.hpp"

namespace kadcon {

struct Contact {
  NodeId id;
  SimTime last_seen = 0;
  int failure_count = 0;
};

// One k-bucket. Entries are kept in last-seen order: head (front) is the
// least recently seen contact, tail the most recent. Using list position
// for recency avoids timestamp ties.
struct KBucket {
  std::vector<Contact> entries;

  const Contact* find(const NodeId& id) const {
    for (const Contact& c : entries)
      if (c.id == id) return &c;
    return nullptr;
  }
};

enum class InsertStatus { inserted, refreshed, bucket_full, rejected_self };

struct InsertOutcome {
  InsertStatus status;
  std::optional<NodeId> head;  // least-recently-seen contact when bucket_full
};

enum class FailureOutcome { retained, removed, absent };

// Per-node contact storage: b buckets of capacity k. The owner id never
// appears in any bucket, and a contact's bucket is fixed by
// bucket_index(owner, contact).
class RoutingTable {
 public:
  RoutingTable(NodeId owner, int k);

  const NodeId& owner() const { return owner_; }
  int k() const { return k_; }
  int bucket_count() const { return static_cast<int>(buckets_.size()); }
  const KBucket& bucket(int i) const { return buckets_[static_cast<size_t>(i)]; }

  // Records a successful sighting of `id`. A full bucket is left unchanged;
  // the returned head lets the protocol layer ping the least-recently-seen
  // contact instead of evicting it outright.
  InsertOutcome observe_contact(const NodeId& id, SimTime now);

  // One failed communication in a row. The contact is removed once
  // failure_count reaches `staleness_limit`; observe_contact resets the
  // streak.
  FailureOutcome record_failure(const NodeId& id, int staleness_limit);

  bool contains(const NodeId& id) const;
  int failure_count(const NodeId& id) const;  // -1 when absent
  size_t size() const;

  // Up to `count` contact ids, ascending by XOR distance to `target`.
  // Distances to a fixed target are injective, so the order is strict.
  std::vector<NodeId> closest_contacts(const NodeId& target, size_t count) const;

  // Every contact id across all buckets.
  std::vector<NodeId> dump_contacts() const;

 private:
  KBucket& bucket_for(const NodeId& id);

  NodeId owner_;
  int k_;
  std::vector<KBucket> buckets_;
};

}  // namespace kadcon

#endif
