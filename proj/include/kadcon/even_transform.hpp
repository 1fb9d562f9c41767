#ifndef KADCON_EVEN_TRANSFORM_HPP
#define KADCON_EVEN_TRANSFORM_HPP

#include <utility>
#include <vector>

#include "kadcon/digraph.hpp"

namespace kadcon {

// Vertex-split graph: each original vertex v becomes the incoming vertex
// v' = 2v and the outgoing vertex v'' = 2v+1, joined by one unit-capacity
// internal edge. Original edges (v, w) become (v'', w'). A max flow from
// a'' to b' then counts vertex-disjoint a->b paths (internal edges act as
// vertex capacities), so flow value = vertex connectivity for non-adjacent
// pairs.
struct TransformedGraph {
  int n2 = 0;                             // = 2n vertices
  int m2 = 0;                             // = m + n unit-capacity arcs
  std::vector<std::pair<int, int>> arcs;  // internal arcs first, then originals

  static int in_vertex(int v) { return 2 * v; }
  static int out_vertex(int v) { return 2 * v + 1; }
};

// Requires a graph without self-loops or parallel edges (checked).
TransformedGraph even_transform(const DiGraph& g);

}  // namespace kadcon

#endif
