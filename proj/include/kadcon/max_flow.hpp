#ifndef KADCON_MAX_FLOW_HPP
#define KADCON_MAX_FLOW_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "kadcon/even_transform.hpp"

namespace kadcon {

// Highest-label push-relabel max flow with gap heuristic and exact
// distance initialization. The arc structure is built once; every
// max_flow() call resets the mutable state, so one solver serves the many
// source/sink pairs of a connectivity analysis.
class MaxFlowSolver {
 public:
  MaxFlowSolver(int n, const std::vector<std::pair<int, int>>& arcs,
                const std::vector<int64_t>& caps);
  // Unit capacities throughout, as used for connectivity.
  explicit MaxFlowSolver(const TransformedGraph& g);

  // Exact max flow value from s to t (phase 1 of the algorithm).
  int64_t max_flow(int s, int t);

  // Per input arc flow of the last max_flow() call. Runs the preflow-to-
  // flow conversion (phase 2), so interior vertices conserve flow and the
  // result decomposes into s->t paths.
  std::vector<int64_t> arc_flows();

  int vertex_count() const { return n_; }
  int arc_count() const { return static_cast<int>(orig_cap_.size()) / 2; }

 private:
  void discharge(int v, int limit);
  void relabel(int v);
  void init_labels_from(int root, int base);
  void add_active(int v);
  int pop_highest(int limit);

  int n_;
  // Residual arcs come in pairs: input arc i is arc 2i, its reverse 2i+1.
  std::vector<int> to_;         // per residual arc: head vertex
  std::vector<int64_t> cap_;    // per residual arc: remaining capacity
  std::vector<int64_t> orig_cap_;
  std::vector<int> first_;      // CSR offsets into inc_
  std::vector<int> inc_;        // incident residual arc ids per vertex
  std::vector<int64_t> excess_;
  std::vector<int> label_;
  std::vector<int> cur_;        // current-arc pointer (index into inc_)
  std::vector<int> label_count_;
  std::vector<std::vector<int>> bucket_;  // active vertices by label
  std::vector<char> in_bucket_;
  int highest_ = -1;
  int source_ = -1;
  int sink_ = -1;
  bool have_flow_ = false;  // phase 2 already ran for the current pair
};

}  // namespace kadcon

#endif
