#include "kadcon/routing_table.hpp"

#include <algorithm>

namespace kadcon {

RoutingTable::RoutingTable(NodeId owner, int k) : owner_(owner), k_(k) {
  if (k < 1) throw ConfigError("bucket capacity k must be >= 1");
  buckets_.resize(static_cast<size_t>(owner_.bits()));
}

KBucket& RoutingTable::bucket_for(const NodeId& id) {
  return buckets_[static_cast<size_t>(bucket_index(owner_, id))];
}

InsertOutcome RoutingTable::observe_contact(const NodeId& id, SimTime now) {
  NodeId::require_same_width(owner_, id);
  if (id == owner_) return {InsertStatus::rejected_self, std::nullopt};
  KBucket& b = bucket_for(id);
  for (size_t i = 0; i < b.entries.size(); ++i) {
    if (b.entries[i].id == id) {
      Contact c = b.entries[i];
      c.last_seen = now;
      c.failure_count = 0;
      b.entries.erase(b.entries.begin() + static_cast<ptrdiff_t>(i));
      b.entries.push_back(c);  // tail = most recently seen
      return {InsertStatus::refreshed, std::nullopt};
    }
  }
  if (b.entries.size() < static_cast<size_t>(k_)) {
    b.entries.push_back(Contact{id, now, 0});
    return {InsertStatus::inserted, std::nullopt};
  }
  return {InsertStatus::bucket_full, b.entries.front().id};
}

FailureOutcome RoutingTable::record_failure(const NodeId& id, int staleness_limit) {
  if (id == owner_) return FailureOutcome::absent;
  KBucket& b = bucket_for(id);
  for (size_t i = 0; i < b.entries.size(); ++i) {
    if (b.entries[i].id == id) {
      if (++b.entries[i].failure_count >= staleness_limit) {
        b.entries.erase(b.entries.begin() + static_cast<ptrdiff_t>(i));
        return FailureOutcome::removed;
      }
      return FailureOutcome::retained;
    }
  }
  return FailureOutcome::absent;
}

bool RoutingTable::contains(const NodeId& id) const {
  if (id == owner_) return false;
  return buckets_[static_cast<size_t>(bucket_index(owner_, id))].find(id) != nullptr;
}

int RoutingTable::failure_count(const NodeId& id) const {
  if (id == owner_) return -1;
  const Contact* c = buckets_[static_cast<size_t>(bucket_index(owner_, id))].find(id);
  return c ? c->failure_count : -1;
}

size_t RoutingTable::size() const {
  size_t n = 0;
  for (const KBucket& b : buckets_) n += b.entries.size();
  return n;
}

std::vector<NodeId> RoutingTable::closest_contacts(const NodeId& target, size_t count) const {
  std::vector<std::pair<Distance, NodeId>> all;
  all.reserve(size());
  for (const KBucket& b : buckets_)
    for (const Contact& c : b.entries) all.emplace_back(xor_distance(c.id, target), c.id);
  size_t take = std::min(count, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<ptrdiff_t>(take), all.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<NodeId> out;
  out.reserve(take);
  for (size_t i = 0; i < take; ++i) out.push_back(all[i].second);
  return out;
}

std::vector<NodeId> RoutingTable::dump_contacts() const {
  std::vector<NodeId> out;
  out.reserve(size());
  for (const KBucket& b : buckets_)
    for (const Contact& c : b.entries) out.push_back(c.id);
  return out;
}

}  // namespace kadcon
