#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "kadcon/lookup.hpp"

using namespace kadcon;

TEST_CASE("empty seed finishes immediately with empty result") {
  Lookup lk(NodeId(1, 16), NodeId(2, 16), 3, 20);
  lk.seed({});
  CHECK(lk.finished());
  CHECK(lk.result().empty());
  CHECK(lk.take_requests().empty());
}

TEST_CASE("queries the best candidates first, at most alpha in flight") {
  NodeId self(0, 16), target(100, 16);
  Lookup lk(self, target, 2, 20);
  lk.seed({NodeId(101, 16), NodeId(40, 16), NodeId(102, 16)});
  auto reqs = lk.take_requests();
  REQUIRE(reqs.size() == 2);
  CHECK(reqs[0] == NodeId(101, 16));  // dist 1
  CHECK(reqs[1] == NodeId(102, 16));  // dist 2
  CHECK(lk.inflight() == 2);
  CHECK(lk.take_requests().empty());  // alpha reached
  lk.on_response(NodeId(101, 16), {});
  auto next = lk.take_requests();
  REQUIRE(next.size() == 1);
  CHECK(next[0] == NodeId(40, 16));
}

TEST_CASE("terminates when no unqueried candidate improves on the best response") {
  NodeId self(0, 16), target(100, 16);
  Lookup lk(self, target, 3, 20);
  lk.seed({NodeId(101, 16), NodeId(40, 16)});
  for (const NodeId& id : lk.take_requests()) (void)id;
  lk.on_response(NodeId(101, 16), {});
  lk.on_response(NodeId(40, 16), {});
  // best responded has dist 1; no unqueried left
  CHECK(lk.finished());
  auto res = lk.result();
  REQUIRE(res.size() == 2);
  CHECK(res[0] == NodeId(101, 16));
}

TEST_CASE("keeps querying while a closer unqueried candidate exists") {
  NodeId self(0, 16), target(100, 16);
  Lookup lk(self, target, 1, 20);
  lk.seed({NodeId(40, 16)});
  auto r1 = lk.take_requests();
  REQUIRE(r1.size() == 1);
  lk.on_response(NodeId(40, 16), {NodeId(101, 16)});  // closer candidate learned
  CHECK_FALSE(lk.finished());
  auto r2 = lk.take_requests();
  REQUIRE(r2.size() == 1);
  CHECK(r2[0] == NodeId(101, 16));
  lk.on_response(NodeId(101, 16), {});
  CHECK(lk.finished());
}

TEST_CASE("failures release inflight slots") {
  NodeId self(0, 16), target(100, 16);
  Lookup lk(self, target, 1, 3);
  lk.seed({NodeId(101, 16), NodeId(102, 16)});
  auto r1 = lk.take_requests();
  REQUIRE(r1.size() == 1);
  lk.on_failure(r1[0]);
  CHECK(lk.inflight() == 0);
  auto r2 = lk.take_requests();
  REQUIRE(r2.size() == 1);
  CHECK(r2[0] == NodeId(102, 16));
  lk.on_failure(r2[0]);
  CHECK(lk.finished());
  CHECK(lk.result().empty());
}

TEST_CASE("k responses terminate the lookup") {
  NodeId self(0, 16), target(1000, 16);
  Lookup lk(self, target, 3, 2);
  lk.seed({NodeId(1, 16), NodeId(2, 16), NodeId(3, 16)});
  auto reqs = lk.take_requests();
  REQUIRE(reqs.size() == 3);
  lk.on_response(reqs[0], {});
  CHECK_FALSE(lk.finished());
  lk.on_response(reqs[1], {});
  CHECK(lk.finished());  // k=2 responded, one still inflight
  CHECK(lk.result().size() == 2);
}

TEST_CASE("at most alpha inflight under adversarial random sequences") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    int alpha = 1 + static_cast<int>(rng_below(rng, 4));
    int k = 1 + static_cast<int>(rng_below(rng, 6));
    NodeId self = random_id(rng, 32);
    NodeId target = random_id(rng, 32);
    Lookup lk(self, target, alpha, k);
    std::vector<NodeId> seeds;
    for (int i = 0; i < 5; ++i) seeds.push_back(random_id(rng, 32));
    lk.seed(seeds);
    std::vector<NodeId> pending;
    int steps = 0;
    while (!lk.finished() && steps++ < 10000) {
      for (const NodeId& id : lk.take_requests()) pending.push_back(id);
      CHECK(lk.inflight() <= alpha);
      if (pending.empty()) break;
      size_t pick = rng_below(rng, pending.size());
      NodeId peer = pending[pick];
      pending.erase(pending.begin() + static_cast<ptrdiff_t>(pick));
      if (rng_below(rng, 3) == 0) {
        lk.on_failure(peer);
      } else {
        std::vector<NodeId> learned;
        for (uint64_t i = 0; i < rng_below(rng, 4); ++i) learned.push_back(random_id(rng, 32));
        lk.on_response(peer, learned);
      }
    }
    // the request budget guarantees termination
    CHECK(lk.requests_issued() <= 20 * k);
    CHECK(steps < 10000);
    auto res = lk.result();
    CHECK(res.size() <= static_cast<size_t>(k));
    for (size_t i = 1; i < res.size(); ++i)
      CHECK(xor_distance(res[i - 1], target) < xor_distance(res[i], target));
  }
}

TEST_CASE("self is never a candidate") {
  NodeId self(7, 16), target(100, 16);
  Lookup lk(self, target, 3, 5);
  lk.seed({self, NodeId(101, 16)});
  auto reqs = lk.take_requests();
  REQUIRE(reqs.size() == 1);
  lk.on_response(reqs[0], {self});
  CHECK(lk.finished());
  for (const NodeId& id : lk.result()) CHECK(id != self);
}
