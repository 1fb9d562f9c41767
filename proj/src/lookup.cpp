#include "kadcon/lookup.hpp"

#include <algorithm>

namespace kadcon {

Lookup::Lookup(NodeId self, NodeId target, int alpha, int k)
    : self_(self),
      target_(target),
      alpha_(alpha),
      k_(k),
      max_shortlist_(3 * k),
      request_budget_(20 * k) {
  if (alpha < 1 || k < 1) throw ConfigError("lookup requires alpha >= 1 and k >= 1");
}

void Lookup::insert_candidate(const NodeId& id) {
  if (id == self_) return;
  Entry e{xor_distance(id, target_), id, Status::unqueried};
  auto pos = std::lower_bound(shortlist_.begin(), shortlist_.end(), e,
                              [](const Entry& a, const Entry& b) { return a.dist < b.dist; });
  if (pos != shortlist_.end() && pos->id == id) return;
  shortlist_.insert(pos, e);
  if (static_cast<int>(shortlist_.size()) > max_shortlist_) {
    // prune the farthest candidate that carries no state yet
    for (auto it = shortlist_.rbegin(); it != shortlist_.rend(); ++it) {
      if (it->status == Status::unqueried || it->status == Status::failed) {
        shortlist_.erase(std::next(it).base());
        break;
      }
    }
  }
}

void Lookup::seed(const std::vector<NodeId>& candidates) {
  for (const NodeId& id : candidates) insert_candidate(id);
}

std::vector<NodeId> Lookup::take_requests() {
  std::vector<NodeId> out;
  if (finished()) return out;
  for (Entry& e : shortlist_) {
    if (inflight_ >= alpha_ || requests_issued_ >= request_budget_) break;
    if (e.status != Status::unqueried) continue;
    e.status = Status::inflight;
    ++inflight_;
    ++requests_issued_;
    out.push_back(e.id);
  }
  return out;
}

void Lookup::on_response(const NodeId& from, const std::vector<NodeId>& contacts) {
  for (Entry& e : shortlist_) {
    if (e.id == from && e.status == Status::inflight) {
      e.status = Status::responded;
      --inflight_;
      ++responded_;
      break;
    }
  }
  for (const NodeId& c : contacts) insert_candidate(c);
}

void Lookup::on_failure(const NodeId& from) {
  for (Entry& e : shortlist_) {
    if (e.id == from && e.status == Status::inflight) {
      e.status = Status::failed;
      --inflight_;
      break;
    }
  }
}

bool Lookup::finished() const {
  if (responded_ >= k_) return true;
  if (inflight_ > 0) return false;
  if (requests_issued_ >= request_budget_) return true;  // no more progress
  // shortlist is sorted, so the first entry of each status is the best
  const Entry* best_unqueried = nullptr;
  const Entry* best_responded = nullptr;
  for (const Entry& e : shortlist_) {
    if (!best_unqueried && e.status == Status::unqueried) best_unqueried = &e;
    if (!best_responded && e.status == Status::responded) best_responded = &e;
    if (best_unqueried && best_responded) break;
  }
  if (!best_unqueried) return true;  // nothing left to ask
  if (!best_responded) return false;
  return !(best_unqueried->dist < best_responded->dist);
}

std::vector<NodeId> Lookup::result() const {
  std::vector<NodeId> out;
  for (const Entry& e : shortlist_) {
    if (e.status == Status::responded) {
      out.push_back(e.id);
      if (static_cast<int>(out.size()) >= k_) break;
    }
  }
  return out;
}

}  // namespace kadcon
