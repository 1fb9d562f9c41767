#ifndef KADCON_LOOKUP_HPP
#define KADCON_LOOKUP_HPP

#include <vector>

#include "kadcon/node_id.hpp"

namespace kadcon {

// State machine for one iterative lookup. The transport layer feeds it
// responses and failures; it decides which candidates to query next.
//
// Termination: k distinct candidates responded, or nothing is in flight and
// no unqueried candidate is closer than the closest responded one. A hard
// request budget of 20*k guarantees termination regardless of interleaving.
class Lookup {
 public:
  enum class Status { unqueried, inflight, responded, failed };

  Lookup(NodeId self, NodeId target, int alpha, int k);

  // Seeds the shortlist, normally with closest_contacts from the
  // initiator's table. The initiator itself is never a candidate.
  void seed(const std::vector<NodeId>& candidates);

  // Up to alpha-minus-inflight best unqueried candidates, marked inflight.
  // Empty when finished or when the request budget is exhausted.
  std::vector<NodeId> take_requests();

  void on_response(const NodeId& from, const std::vector<NodeId>& contacts);
  void on_failure(const NodeId& from);

  bool finished() const;

  // Responded candidates ascending by distance to the target, at most k.
  std::vector<NodeId> result() const;

  int inflight() const { return inflight_; }
  int responded() const { return responded_; }
  int requests_issued() const { return requests_issued_; }
  const NodeId& target() const { return target_; }

 private:
  struct Entry {
    Distance dist;
    NodeId id;
    Status status;
  };

  void insert_candidate(const NodeId& id);

  NodeId self_;
  NodeId target_;
  int alpha_;
  int k_;
  int max_shortlist_;   // candidate set capped at 3*k closest
  int request_budget_;  // hard cap of 20*k requests
  std::vector<Entry> shortlist_;  // ascending by dist
  int inflight_ = 0;
  int responded_ = 0;
  int requests_issued_ = 0;
};

}  // namespace kadcon

#endif
