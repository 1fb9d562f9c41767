#include "kadcon/even_transform.hpp"

#include <stdexcept>

namespace kadcon {

TransformedGraph even_transform(const DiGraph& g) {
  TransformedGraph t;
  t.n2 = 2 * g.n;
  t.m2 = g.m + g.n;
  t.arcs.reserve(t.m2);
  for (int v = 0; v < g.n; ++v) {
    t.arcs.emplace_back(TransformedGraph::in_vertex(v), TransformedGraph::out_vertex(v));
  }
  for (int v = 0; v < g.n; ++v) {
    int prev = -1;
    for (int w : g.adj[v]) {
      if (w == v) throw std::invalid_argument("even_transform: input has a self-loop");
      if (w == prev) throw std::invalid_argument("even_transform: input has parallel edges");
      prev = w;
      t.arcs.emplace_back(TransformedGraph::out_vertex(v), TransformedGraph::in_vertex(w));
    }
  }
  return t;
}

}  // namespace kadcon
