#include "kadcon/engine.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace kadcon {

Engine::Engine(EngineParams params) : params_(params), rng_(params.seed) {
  if (params_.k < 1 || params_.alpha < 1 || params_.staleness < 1) {
    throw ConfigError("engine: k, alpha and staleness must be positive");
  }
  if (params_.loss_p < 0.0 || params_.loss_p >= 1.0) {
    throw ConfigError("engine: loss probability must be in [0, 1)");
  }
}

NodeId Engine::draw_fresh_id() {
  for (;;) {
    NodeId id = random_id(rng_, params_.bits);
    if (!nodes_.count(id)) return id;
  }
}

NodeId Engine::add_node(std::optional<NodeId> id) {
  NodeId nid = id ? *id : draw_fresh_id();
  if (nodes_.count(nid)) throw std::invalid_argument("add_node: id already live");
  nodes_.emplace(nid, std::make_unique<Node>(nid, params_.k, params_.staleness));
  alive_ids_.insert(std::lower_bound(alive_ids_.begin(), alive_ids_.end(), nid), nid);
  schedule_next_refresh(nid);
  return nid;
}

void Engine::join(const NodeId& id, std::optional<NodeId> bootstrap) {
  add_node(id);
  if (!bootstrap || *bootstrap == id) return;
  Node& node = *nodes_.at(id);
  note_contact_with_probe(node, *bootstrap);
  start_lookup(id, id);  // self lookup populates the table along the path
}

void Engine::leave(const NodeId& id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) return;
  nodes_.erase(it);
  auto pos = std::lower_bound(alive_ids_.begin(), alive_ids_.end(), id);
  if (pos != alive_ids_.end() && *pos == id) alive_ids_.erase(pos);
  // In-flight requests from this node resolve via their timeouts; the
  // lazily checked owner is gone by then and the bookkeeping is dropped.
}

Node* Engine::find_node(const NodeId& id) {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : it->second.get();
}

const Node* Engine::find_node(const NodeId& id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : it->second.get();
}

NodeId Engine::random_alive(Rng& rng) const {
  if (alive_ids_.empty()) throw std::logic_error("random_alive: empty network");
  return alive_ids_[rng_below(rng, alive_ids_.size())];
}

void Engine::schedule(SimTime at, Task task) {
  push_event(std::max(at, now_), EvTask{std::move(task)});
}

void Engine::push_event(SimTime at, std::variant<EvDeliver, EvTimeout, EvTask> payload) {
  events_.push_back(Event{at, next_seq_++, std::move(payload)});
  std::push_heap(events_.begin(), events_.end(), EventAfter{});
}

SimTime Engine::draw_latency() {
  return rng_range(rng_, params_.latency_min, params_.latency_max);
}

uint64_t Engine::send_request(const NodeId& from, const NodeId& to, Message msg, RequestCtx ctx) {
  uint64_t rid = next_request_id_++;
  msg.from = from;
  msg.to = to;
  msg.request_id = rid;
  pending_.emplace(rid, Pending{from, to, ctx});
  push_event(now_ + params_.request_timeout, EvTimeout{rid});
  ++stats_.messages_sent;
  if (loss_drop(rng_)) {
    ++stats_.messages_dropped;
  } else {
    push_event(now_ + draw_latency(), EvDeliver{std::move(msg)});
  }
  return rid;
}

void Engine::send_response(Message msg) {
  ++stats_.messages_sent;
  if (loss_drop(rng_)) {
    ++stats_.messages_dropped;
  } else {
    push_event(now_ + draw_latency(), EvDeliver{std::move(msg)});
  }
}

void Engine::send_probe(const NodeId& owner, const HeadProbe& probe) {
  Message ping;
  ping.kind = MessageKind::ping_req;
  send_request(owner, probe.head, std::move(ping), ProbeCtx{});
}

void Engine::note_contact_with_probe(Node& node, const NodeId& peer) {
  if (auto probe = node.note_contact(peer, now_)) send_probe(node.id(), *probe);
}

void Engine::handle_deliver(Message& msg) {
  Node* node = find_node(msg.to);
  if (!node) return;  // receiver departed; the sender's timeout handles it
  ++stats_.messages_delivered;
  HandleResult hr = node->handle_message(msg, now_);
  for (Message& resp : hr.responses) send_response(std::move(resp));
  if (hr.probe) send_probe(msg.to, *hr.probe);
  if (is_request(msg.kind)) return;

  auto it = pending_.find(msg.request_id);
  if (it == pending_.end() || !(it->second.to == msg.from) || !(it->second.from == msg.to)) {
    return;  // already timed out, or a mismatched/stale response
  }
  Pending pend = it->second;
  pending_.erase(it);
  if (std::holds_alternative<LookupCtx>(pend.ctx)) {
    uint64_t lid = std::get<LookupCtx>(pend.ctx).id;
    auto lit = lookups_.find(lid);
    if (lit == lookups_.end()) return;
    if (msg.kind == MessageKind::find_node_resp) {
      lit->second.machine.on_response(msg.from, msg.contacts);
    } else {
      lit->second.machine.on_failure(msg.from);  // wrong kind counts as a miss
    }
    advance_lookup(lid);
  } else if (std::holds_alternative<StoreCtx>(pend.ctx)) {
    uint64_t did = std::get<StoreCtx>(pend.ctx).dissemination;
    auto dit = dissems_.find(did);
    if (dit == dissems_.end()) return;
    if (msg.kind == MessageKind::store_resp) {
      ++dit->second.acks;
      ++stats_.stores_acked;
    }
    --dit->second.outstanding;
    finish_dissemination_if_done(did);
  } else {
    node->head_probe_ok(msg.from);
  }
}

void Engine::handle_timeout(uint64_t request_id) {
  auto it = pending_.find(request_id);
  if (it == pending_.end()) return;  // answered in time
  Pending pend = it->second;
  pending_.erase(it);
  ++stats_.requests_timed_out;
  Node* owner = find_node(pend.from);
  if (owner) owner->on_peer_failure(pend.to, now_);

  if (std::holds_alternative<LookupCtx>(pend.ctx)) {
    uint64_t lid = std::get<LookupCtx>(pend.ctx).id;
    auto lit = lookups_.find(lid);
    if (lit == lookups_.end()) return;
    if (!owner) {
      lookups_.erase(lit);  // initiator left; abandon silently
      return;
    }
    lit->second.machine.on_failure(pend.to);
    advance_lookup(lid);
  } else if (std::holds_alternative<StoreCtx>(pend.ctx)) {
    uint64_t did = std::get<StoreCtx>(pend.ctx).dissemination;
    auto dit = dissems_.find(did);
    if (dit == dissems_.end()) return;
    if (!owner) {
      dissems_.erase(dit);
      return;
    }
    --dit->second.outstanding;
    finish_dissemination_if_done(did);
  }
  // ProbeCtx: on_peer_failure already resolved the head/candidate question.
}

uint64_t Engine::start_lookup(const NodeId& initiator, const NodeId& target, LookupDone done) {
  Node* node = find_node(initiator);
  if (!node) return 0;
  uint64_t lid = next_lookup_id_++;
  ++stats_.lookups_started;
  Lookup machine(initiator, target, params_.alpha, params_.k);
  machine.seed(node->table().closest_contacts(target, params_.k));
  lookups_.emplace(lid, LookupRun{initiator, std::move(machine), std::move(done)});
  advance_lookup(lid);
  return lid;
}

void Engine::advance_lookup(uint64_t lookup_id) {
  auto it = lookups_.find(lookup_id);
  if (it == lookups_.end()) return;
  LookupRun& run = it->second;
  for (const NodeId& peer : run.machine.take_requests()) {
    Message req;
    req.kind = MessageKind::find_node_req;
    req.target = run.machine.target();
    send_request(run.initiator, peer, std::move(req), LookupCtx{lookup_id});
  }
  if (!run.machine.finished()) return;
  std::vector<NodeId> result = run.machine.result();
  LookupDone done = std::move(run.done);
  lookups_.erase(it);
  ++stats_.lookups_completed;
  if (done) done(result);
}

uint64_t Engine::start_dissemination(const NodeId& initiator, const NodeId& key,
                                     std::vector<uint8_t> payload, DissemDone done) {
  Node* node = find_node(initiator);
  if (!node) return 0;
  uint64_t did = next_dissem_id_++;
  ++stats_.disseminations_started;
  DissemRun run;
  run.initiator = initiator;
  run.key = key;
  run.payload = std::move(payload);
  run.done = std::move(done);
  dissems_.emplace(did, std::move(run));
  start_lookup(initiator, key, [this, did](const std::vector<NodeId>& closest) {
    auto dit = dissems_.find(did);
    if (dit == dissems_.end()) return;
    DissemRun& d = dit->second;
    d.lookup_done = true;
    if (!find_node(d.initiator)) {
      dissems_.erase(dit);
      return;
    }
    d.outstanding = static_cast<int>(closest.size());
    for (const NodeId& peer : closest) {
      Message req;
      req.kind = MessageKind::store_req;
      req.target = d.key;
      req.payload = d.payload;
      send_request(d.initiator, peer, std::move(req), StoreCtx{did});
    }
    finish_dissemination_if_done(did);
  });
  return did;
}

void Engine::finish_dissemination_if_done(uint64_t dissem_id) {
  auto it = dissems_.find(dissem_id);
  if (it == dissems_.end()) return;
  DissemRun& d = it->second;
  if (!d.lookup_done || d.outstanding > 0) return;
  int acks = d.acks;
  DissemDone done = std::move(d.done);
  dissems_.erase(it);
  ++stats_.disseminations_completed;
  if (done) done(acks);
}

void Engine::start_refresh(const NodeId& id) {
  Node* node = find_node(id);
  if (!node) return;
  for (int i = 0; i < params_.bits; ++i) {
    start_lookup(id, random_id_in_bucket(id, i, rng_));
  }
}

void Engine::schedule_next_refresh(const NodeId& id) {
  if (params_.refresh_period <= 0) return;
  schedule(now_ + params_.refresh_period, [id](Engine& e) {
    if (!e.find_node(id)) return;  // departed; stop the chain
    e.start_refresh(id);
    e.schedule_next_refresh(id);
  });
}

void Engine::run_until(SimTime t) {
  while (!events_.empty() && events_.front().at <= t) {
    std::pop_heap(events_.begin(), events_.end(), EventAfter{});
    Event ev = std::move(events_.back());
    events_.pop_back();
    now_ = ev.at;
    if (std::holds_alternative<EvDeliver>(ev.payload)) {
      handle_deliver(std::get<EvDeliver>(ev.payload).msg);
    } else if (std::holds_alternative<EvTimeout>(ev.payload)) {
      handle_timeout(std::get<EvTimeout>(ev.payload).request_id);
    } else {
      std::get<EvTask>(ev.payload).fn(*this);
    }
  }
  if (t > now_) now_ = t;
}

}  // namespace kadcon
