#ifndef KADCON_DIGRAPH_HPP
#define KADCON_DIGRAPH_HPP

#include <utility>
#include <vector>

#include "kadcon/snapshot.hpp"

namespace kadcon {

// Directed graph over dense vertex indices, every edge capacity 1.
// Guaranteed free of self-loops and parallel edges by its builders.
struct DiGraph {
  int n = 0;
  int m = 0;
  std::vector<NodeId> labels;         // index -> originating id, ascending
  std::vector<std::vector<int>> adj;  // out-neighbors, each list sorted
  std::vector<int> d_in;
  std::vector<int> d_out;

  bool has_edge(int v, int w) const;
  bool complete() const { return static_cast<long>(m) == static_cast<long>(n) * (n - 1); }
};

// One vertex per snapshot entry; an edge (v, w) for every contact of v that
// is itself alive in the snapshot. Contacts pointing at departed nodes are
// dropped: a dead node forwards nothing, so it contributes no vertex.
DiGraph build_digraph(const Snapshot& snap);

// Test/tool builder over integer vertices. Rejects self-loops, duplicate
// edges, and out-of-range endpoints.
DiGraph make_digraph(int n, const std::vector<std::pair<int, int>>& edges);

// Fraction of edges whose reverse edge is present. Error on empty graphs.
double reciprocity(const DiGraph& g);

}  // namespace kadcon

#endif
