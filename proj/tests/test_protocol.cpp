#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "kadcon/node.hpp"

using namespace kadcon;

namespace {
Message find_node_req(const NodeId& from, const NodeId& to, const NodeId& target, uint64_t rid) {
  return Message{MessageKind::find_node_req, from, to, target, {}, {}, rid};
}
}  // namespace

TEST_CASE("find_node against an empty table answers with no contacts") {
  Node n(NodeId(1, 32), 20, 5);
  auto res = n.handle_message(find_node_req(NodeId(2, 32), n.id(), NodeId(77, 32), 1), 0);
  REQUIRE(res.responses.size() == 1);
  CHECK(res.responses[0].kind == MessageKind::find_node_resp);
  CHECK(res.responses[0].to == NodeId(2, 32));
  CHECK(res.responses[0].request_id == 1);
  CHECK(res.responses[0].contacts.empty());
}

TEST_CASE("find_node returns exactly the k closest known contacts") {
  Rng rng(3);
  Node n(random_id(rng, 32), 20, 5);
  std::vector<NodeId> known;
  while (known.size() < 25) {
    NodeId c = random_id(rng, 32);
    if (c == n.id()) continue;
    if (n.note_contact(c, 0) == std::nullopt && n.table().contains(c)) known.push_back(c);
  }
  NodeId target = random_id(rng, 32);
  auto res = n.handle_message(find_node_req(known[0], n.id(), target, 9), 1);
  REQUIRE(res.responses.size() == 1);
  const auto& got = res.responses[0].contacts;
  REQUIRE(got.size() == 20);
  // oracle: sort everything in the table by distance to the target
  auto all = n.table().dump_contacts();
  std::sort(all.begin(), all.end(), [&](const NodeId& a, const NodeId& b) {
    return xor_distance(a, target) < xor_distance(b, target);
  });
  for (size_t i = 0; i < 20; ++i) CHECK(got[i] == all[i]);
}

TEST_CASE("the sender of any request lands in the receiver's table") {
  Node n(NodeId(1, 32), 20, 5);
  NodeId sender(42, 32);
  n.handle_message(find_node_req(sender, n.id(), NodeId(7, 32), 1), 0);
  CHECK(n.table().contains(sender));
  Node m(NodeId(1, 32), 20, 5);
  m.handle_message(Message{MessageKind::ping_req, sender, m.id(), {}, {}, {}, 2}, 0);
  CHECK(m.table().contains(sender));
}

TEST_CASE("store_req stores the payload and acknowledges") {
  Node n(NodeId(1, 32), 20, 5);
  NodeId key(99, 32);
  Message req{MessageKind::store_req, NodeId(2, 32), n.id(), key, {}, {0xde, 0xad}, 5};
  auto res = n.handle_message(req, 0);
  REQUIRE(res.responses.size() == 1);
  CHECK(res.responses[0].kind == MessageKind::store_resp);
  CHECK(n.has_stored(key));
}

TEST_CASE("ping is answered with pong") {
  Node n(NodeId(1, 32), 20, 5);
  auto res = n.handle_message(Message{MessageKind::ping_req, NodeId(2, 32), n.id(), {}, {}, {}, 3}, 0);
  REQUIRE(res.responses.size() == 1);
  CHECK(res.responses[0].kind == MessageKind::ping_resp);
  CHECK(res.responses[0].request_id == 3);
}

TEST_CASE("dead nodes answer nothing") {
  Node n(NodeId(1, 32), 20, 5);
  n.set_alive(false);
  auto res = n.handle_message(find_node_req(NodeId(2, 32), n.id(), NodeId(7, 32), 1), 0);
  CHECK(res.responses.empty());
  CHECK_FALSE(n.table().contains(NodeId(2, 32)));
}

TEST_CASE("responses update the table without producing output") {
  Node n(NodeId(1, 32), 20, 5);
  Message resp{MessageKind::find_node_resp, NodeId(5, 32), n.id(), {}, {NodeId(6, 32)}, {}, 7};
  auto res = n.handle_message(resp, 0);
  CHECK(res.responses.empty());
  CHECK(n.table().contains(NodeId(5, 32)));
  // contacts listed in a response are not adopted, only the sender is
  CHECK_FALSE(n.table().contains(NodeId(6, 32)));
}

TEST_CASE("full bucket triggers a head probe; the head survives when it answers") {
  // owner 0, b=4, k=1: ids 8..15 share bucket 3
  Node n(NodeId(0, 4), 1, 5);
  CHECK(n.note_contact(NodeId(8, 4), 0) == std::nullopt);
  auto probe = n.note_contact(NodeId(9, 4), 1);
  REQUIRE(probe.has_value());
  CHECK(probe->head == NodeId(8, 4));
  CHECK(probe->candidate == NodeId(9, 4));
  // a second candidate for the same head is dropped while the probe is out
  CHECK(n.note_contact(NodeId(10, 4), 2) == std::nullopt);
  n.head_probe_ok(NodeId(8, 4));
  CHECK(n.table().contains(NodeId(8, 4)));
  CHECK_FALSE(n.table().contains(NodeId(9, 4)));
  // probe resolved: the next full-bucket sighting probes again
  CHECK(n.note_contact(NodeId(11, 4), 3).has_value());
}

TEST_CASE("a probed head that fails out is replaced by the candidate") {
  Node n(NodeId(0, 4), 1, 1);  // s=1: one failure removes
  n.note_contact(NodeId(8, 4), 0);
  auto probe = n.note_contact(NodeId(9, 4), 1);
  REQUIRE(probe.has_value());
  CHECK(n.on_peer_failure(NodeId(8, 4), 2) == FailureOutcome::removed);
  CHECK_FALSE(n.table().contains(NodeId(8, 4)));
  CHECK(n.table().contains(NodeId(9, 4)));
}

TEST_CASE("with s>1 a single probe failure keeps the head and drops the candidate") {
  Node n(NodeId(0, 4), 1, 5);
  n.note_contact(NodeId(8, 4), 0);
  auto probe = n.note_contact(NodeId(9, 4), 1);
  REQUIRE(probe.has_value());
  CHECK(n.on_peer_failure(NodeId(8, 4), 2) == FailureOutcome::retained);
  CHECK(n.table().contains(NodeId(8, 4)));
  CHECK_FALSE(n.table().contains(NodeId(9, 4)));
}

TEST_CASE("on_peer_failure delegates to the staleness machinery") {
  Node n(NodeId(0, 32), 20, 5);
  NodeId peer(9, 32);
  n.note_contact(peer, 0);
  for (int i = 0; i < 4; ++i) CHECK(n.on_peer_failure(peer, i) == FailureOutcome::retained);
  CHECK(n.table().contains(peer));
  CHECK(n.on_peer_failure(peer, 9) == FailureOutcome::removed);
  CHECK_FALSE(n.table().contains(peer));
  CHECK(n.on_peer_failure(peer, 10) == FailureOutcome::absent);
}
