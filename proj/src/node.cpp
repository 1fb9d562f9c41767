#include "kadcon/node.hpp"

namespace kadcon {

Node::Node(NodeId id, int k, int staleness_limit)
    : id_(id), table_(id, k), staleness_limit_(staleness_limit) {
  if (staleness_limit < 1) throw ConfigError("staleness limit s must be >= 1");
}

std::optional<HeadProbe> Node::note_contact(const NodeId& peer, SimTime now) {
  InsertOutcome out = table_.observe_contact(peer, now);
  if (out.status != InsertStatus::bucket_full) return std::nullopt;
  const NodeId& head = *out.head;
  if (pending_probes_.count(head)) return std::nullopt;  // probe already in flight
  pending_probes_.emplace(head, peer);
  return HeadProbe{head, peer};
}

HandleResult Node::handle_message(const Message& msg, SimTime now) {
  HandleResult result;
  if (!alive_) return result;
  switch (msg.kind) {
    case MessageKind::find_node_req: {
      // Answer from the table as it stood before this conversation; the
      // requester learns nothing from being told about itself.
      Message resp{MessageKind::find_node_resp, id_, msg.from, msg.target, {}, {}, msg.request_id};
      resp.contacts = table_.closest_contacts(*msg.target, static_cast<size_t>(table_.k()));
      result.responses.push_back(std::move(resp));
      break;
    }
    case MessageKind::store_req: {
      store_[*msg.target] = msg.payload;
      result.responses.push_back(
          Message{MessageKind::store_resp, id_, msg.from, msg.target, {}, {}, msg.request_id});
      break;
    }
    case MessageKind::ping_req:
      result.responses.push_back(
          Message{MessageKind::ping_resp, id_, msg.from, {}, {}, {}, msg.request_id});
      break;
    default:
      break;  // responses carry no reply
  }
  result.probe = note_contact(msg.from, now);
  return result;
}

void Node::head_probe_ok(const NodeId& head) { pending_probes_.erase(head); }

FailureOutcome Node::on_peer_failure(const NodeId& peer, SimTime now) {
  FailureOutcome out = table_.record_failure(peer, staleness_limit_);
  auto probe = pending_probes_.find(peer);
  if (probe != pending_probes_.end()) {
    if (out == FailureOutcome::removed) table_.observe_contact(probe->second, now);
    pending_probes_.erase(probe);
  }
  return out;
}

int Node::max_failure_count() const {
  int worst = 0;
  for (int i = 0; i < table_.bucket_count(); ++i)
    for (const Contact& c : table_.bucket(i).entries)
      if (c.failure_count > worst) worst = c.failure_count;
  return worst;
}

}  // namespace kadcon
