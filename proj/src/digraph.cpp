#include "kadcon/digraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace kadcon {

bool DiGraph::has_edge(int v, int w) const {
  const std::vector<int>& out = adj[v];
  return std::binary_search(out.begin(), out.end(), w);
}

DiGraph build_digraph(const Snapshot& snap) {
  DiGraph g;
  g.n = static_cast<int>(snap.entries.size());
  g.labels.reserve(g.n);
  for (const auto& [id, contacts] : snap.entries) g.labels.push_back(id);

  g.adj.assign(g.n, {});
  g.d_in.assign(g.n, 0);
  g.d_out.assign(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    const auto& [id, contacts] = snap.entries[v];
    for (const NodeId& peer : contacts) {
      if (peer == id) {
        throw std::invalid_argument("snapshot entry " + id.to_hex() + " references itself");
      }
      // Entries are sorted, so the alive check is a binary search over ids.
      auto it = std::lower_bound(g.labels.begin(), g.labels.end(), peer);
      if (it == g.labels.end() || !(*it == peer)) continue;  // departed node
      g.adj[v].push_back(static_cast<int>(it - g.labels.begin()));
    }
    // Contact lists are strictly ascending, so adj[v] is sorted and free
    // of duplicates already.
    g.d_out[v] = static_cast<int>(g.adj[v].size());
    g.m += g.d_out[v];
    for (int w : g.adj[v]) ++g.d_in[w];
  }
  return g;
}

DiGraph make_digraph(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
  DiGraph g;
  g.n = n;
  g.labels.reserve(n);
  for (int v = 0; v < n; ++v) g.labels.emplace_back(static_cast<uint64_t>(v), 32);
  g.adj.assign(n, {});
  g.d_in.assign(n, 0);
  g.d_out.assign(n, 0);
  for (auto [v, w] : edges) {
    if (v < 0 || v >= n || w < 0 || w >= n) throw std::invalid_argument("edge endpoint out of range");
    if (v == w) throw std::invalid_argument("self-loops are not allowed");
    g.adj[v].push_back(w);
  }
  for (int v = 0; v < n; ++v) {
    std::sort(g.adj[v].begin(), g.adj[v].end());
    if (std::adjacent_find(g.adj[v].begin(), g.adj[v].end()) != g.adj[v].end()) {
      throw std::invalid_argument("parallel edges are not allowed");
    }
    g.d_out[v] = static_cast<int>(g.adj[v].size());
    g.m += g.d_out[v];
    for (int w : g.adj[v]) ++g.d_in[w];
  }
  return g;
}

double reciprocity(const DiGraph& g) {
  if (g.m == 0) throw std::invalid_argument("reciprocity needs at least one edge");
  long mutual = 0;
  for (int v = 0; v < g.n; ++v) {
    for (int w : g.adj[v]) {
      if (g.has_edge(w, v)) ++mutual;
    }
  }
  return static_cast<double>(mutual) / static_cast<double>(g.m);
}

}  // namespace kadcon
