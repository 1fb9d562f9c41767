#include "kadcon/max_flow.hpp"

#include <algorithm>
#include <stdexcept>

namespace kadcon {

MaxFlowSolver::MaxFlowSolver(int n, const std::vector<std::pair<int, int>>& arcs,
                             const std::vector<int64_t>& caps)
    : n_(n) {
  if (arcs.size() != caps.size()) throw std::invalid_argument("arc/capacity count mismatch");
  size_t m = arcs.size();
  to_.resize(2 * m);
  orig_cap_.resize(2 * m);
  std::vector<int> from(2 * m);
  for (size_t i = 0; i < m; ++i) {
    auto [a, b] = arcs[i];
    if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("arc endpoint out of range");
    if (caps[i] < 0) throw std::invalid_argument("negative capacity");
    from[2 * i] = a;
    to_[2 * i] = b;
    orig_cap_[2 * i] = caps[i];
    from[2 * i + 1] = b;
    to_[2 * i + 1] = a;
    orig_cap_[2 * i + 1] = 0;
  }
  // CSR over residual arcs, both directions incident to their tail.
  first_.assign(n + 1, 0);
  for (int v : from) ++first_[v + 1];
  for (int v = 0; v < n; ++v) first_[v + 1] += first_[v];
  inc_.resize(2 * m);
  std::vector<int> fill(first_.begin(), first_.end() - 1);
  for (size_t a = 0; a < 2 * m; ++a) inc_[fill[from[a]]++] = static_cast<int>(a);

  cap_.resize(2 * m);
  excess_.resize(n);
  label_.resize(n);
  cur_.resize(n);
  label_count_.resize(2 * n + 1);
  bucket_.resize(2 * n + 1);
  in_bucket_.resize(n);
}

namespace {
std::vector<int64_t> unit_caps(size_t m) { return std::vector<int64_t>(m, 1); }
}  // namespace

MaxFlowSolver::MaxFlowSolver(const TransformedGraph& g)
    : MaxFlowSolver(g.n2, g.arcs, unit_caps(g.arcs.size())) {}

void MaxFlowSolver::add_active(int v) {
  if (in_bucket_[v] || v == source_ || v == sink_) return;
  in_bucket_[v] = 1;
  bucket_[label_[v]].push_back(v);
  highest_ = std::max(highest_, label_[v]);
}

int MaxFlowSolver::pop_highest(int limit) {
  while (highest_ >= 0) {
    if (highest_ >= limit || bucket_[highest_].empty()) {
      if (bucket_[highest_].empty()) {
        --highest_;
        continue;
      }
      // Active vertices at or above the limit wait for a later phase.
      bool any_below = false;
      for (int h = std::min(highest_, limit - 1); h >= 0; --h) {
        if (!bucket_[h].empty()) {
          highest_ = h;
          any_below = true;
          break;
        }
      }
      if (!any_below) return -1;
      continue;
    }
    int v = bucket_[highest_].back();
    bucket_[highest_].pop_back();
    in_bucket_[v] = 0;
    if (label_[v] != highest_ || excess_[v] <= 0) continue;  // stale entry
    return v;
  }
  return -1;
}

// Exact distance labels: BFS over residual arcs toward `root`, labels
// offset by `base`. Unreached vertices keep their current label.
void MaxFlowSolver::init_labels_from(int root, int base) {
  std::vector<int> queue;
  queue.reserve(n_);
  std::vector<char> seen(n_, 0);
  seen[root] = 1;
  label_[root] = base;
  queue.push_back(root);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int ii = first_[v]; ii < first_[v + 1]; ++ii) {
      int a = inc_[ii];
      // Arc a leaves v; its pair a^1 enters v. A residual arc u->v exists
      // when cap_[a^1] > 0, i.e. walking the BFS backwards.
      int u = to_[a];
      if (seen[u] || cap_[a ^ 1] <= 0) continue;
      seen[u] = 1;
      label_[u] = label_[v] + 1;
      queue.push_back(u);
    }
  }
}

void MaxFlowSolver::relabel(int v) {
  int best = 2 * n_;
  for (int ii = first_[v]; ii < first_[v + 1]; ++ii) {
    int a = inc_[ii];
    if (cap_[a] > 0) best = std::min(best, label_[to_[a]] + 1);
  }
  int old = label_[v];
  --label_count_[old];
  label_[v] = best;
  ++label_count_[best];
  cur_[v] = first_[v];
  // Gap heuristic: an empty level below n_ strands every vertex above it.
  if (label_count_[old] == 0 && old < n_) {
    for (int u = 0; u < n_; ++u) {
      if (u != source_ && label_[u] > old && label_[u] < n_) {
        --label_count_[label_[u]];
        label_[u] = n_ + 1;
        ++label_count_[label_[u]];
      }
    }
  }
}

void MaxFlowSolver::discharge(int v, int limit) {
  while (excess_[v] > 0 && label_[v] < limit) {
    if (cur_[v] == first_[v + 1]) {
      relabel(v);
      continue;
    }
    int a = inc_[cur_[v]];
    int w = to_[a];
    if (cap_[a] > 0 && label_[v] == label_[w] + 1) {
      int64_t delta = std::min(excess_[v], cap_[a]);
      cap_[a] -= delta;
      cap_[a ^ 1] += delta;
      excess_[v] -= delta;
      excess_[w] += delta;
      add_active(w);
    } else {
      ++cur_[v];
    }
  }
}

int64_t MaxFlowSolver::max_flow(int s, int t) {
  if (s == t) throw std::invalid_argument("max_flow: source equals sink");
  if (s < 0 || s >= n_ || t < 0 || t >= n_) throw std::invalid_argument("max_flow: bad terminal");
  source_ = s;
  sink_ = t;
  have_flow_ = false;

  cap_ = orig_cap_;
  std::fill(excess_.begin(), excess_.end(), 0);
  std::fill(label_.begin(), label_.end(), n_);
  std::fill(label_count_.begin(), label_count_.end(), 0);
  std::fill(in_bucket_.begin(), in_bucket_.end(), 0);
  for (auto& b : bucket_) b.clear();
  highest_ = -1;

  init_labels_from(t, 0);
  label_[s] = n_;
  for (int v = 0; v < n_; ++v) {
    cur_[v] = first_[v];
    ++label_count_[label_[v]];
  }

  // Saturate every arc leaving the source.
  for (int ii = first_[s]; ii < first_[s + 1]; ++ii) {
    int a = inc_[ii];
    if (orig_cap_[a] <= 0) continue;
    int w = to_[a];
    cap_[a] = 0;
    cap_[a ^ 1] = orig_cap_[a];
    excess_[s] -= orig_cap_[a];
    excess_[w] += orig_cap_[a];
    add_active(w);
  }

  // Phase 1: push toward the sink; labels >= n_ mean the sink is
  // unreachable and the vertex's surplus waits for phase 2.
  for (int v = pop_highest(n_); v != -1; v = pop_highest(n_)) {
    discharge(v, n_);
    if (excess_[v] > 0 && label_[v] < n_) add_active(v);  // defensive; discharge drains
  }
  return excess_[t];
}

std::vector<int64_t> MaxFlowSolver::arc_flows() {
  if (source_ < 0) throw std::logic_error("arc_flows: no max_flow computed yet");
  if (!have_flow_) {
    // Phase 2: return trapped surplus to the source so conservation holds
    // everywhere except the terminals. Start from a clean active set;
    // labels now measure the residual distance back to the source.
    for (auto& b : bucket_) b.clear();
    std::fill(in_bucket_.begin(), in_bucket_.end(), 0);
    highest_ = -1;
    init_labels_from(source_, n_);
    std::fill(label_count_.begin(), label_count_.end(), 0);
    for (int v = 0; v < n_; ++v) {
      cur_[v] = first_[v];
      ++label_count_[label_[v]];
    }
    for (int v = 0; v < n_; ++v) {
      if (v != source_ && v != sink_ && excess_[v] > 0) add_active(v);
    }
    int limit = 2 * n_;
    for (int v = pop_highest(limit); v != -1; v = pop_highest(limit)) discharge(v, limit);
    have_flow_ = true;
  }
  std::vector<int64_t> flows(orig_cap_.size() / 2);
  for (size_t i = 0; i < flows.size(); ++i) flows[i] = orig_cap_[2 * i] - cap_[2 * i];
  return flows;
}

}  // namespace kadcon
