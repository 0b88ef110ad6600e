#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "swarmroute/graph.hpp"

namespace swarmroute {

/// Disjoint-set forest with union by rank and path compression.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
  }

  /// Merges the sets of a and b. Returns false if they were already joined.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

struct MstResult {
  std::vector<Edge> edges;  // sorted by (u, v), u < v
  double total_weight = 0.0;

  friend bool operator==(const MstResult&, const MstResult&) = default;
};

/// A spanning tree on n nodes has exactly n - 1 edges and no cycle.
inline bool is_spanning_tree(std::size_t node_count, std::span<const Edge> edges) {
  if (node_count == 0 || edges.size() != node_count - 1) return false;
  UnionFind uf(node_count);
  for (const auto& e : edges) {
    if (e.u >= node_count || e.v >= node_count) return false;
    if (!uf.unite(e.u, e.v)) return false;
  }
  return true;
}

namespace detail {

/// (weight, then node sequence) ordering shared by the exact solver and the
/// enumeration oracle.
inline bool path_less(double wa, const std::vector<NodeId>& a, double wb,
                      const std::vector<NodeId>& b) {
  if (wa != wb) return wa < wb;
  return a < b;
}

inline void require_mst_input(const WeightedGraph& g) {
  if (g.directed())
    throw GraphError(GraphError::Kind::not_undirected,
                     "minimum spanning tree requires an undirected graph");
  if (!is_connected(g))
    throw GraphError(GraphError::Kind::disconnected,
                     "graph is disconnected; no spanning tree exists");
}

inline MstResult finish_mst(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  // Every MST has the same multiset of weights; summing them in sorted order
  // makes totals from different tie resolutions bit-identical.
  std::vector<double> weights;
  for (const auto& e : edges) weights.push_back(e.weight);
  std::sort(weights.begin(), weights.end());
  MstResult r;
  for (double w : weights) r.total_weight += w;
  r.edges = std::move(edges);
  return r;
}

inline bool edge_key_less(const Edge& a, const Edge& b) {
  return std::tuple(a.weight, a.u, a.v) < std::tuple(b.weight, b.u, b.v);
}

}  // namespace detail

/// Nearest-node expansion from the origin (Dijkstra). Each node's label is
/// its (distance, path) pair, compared by distance and then lexicographically
/// by node sequence, so among equal-weight shortest paths the lexicographically
/// smallest is returned. Extending a path never decreases its label, which is
/// what makes settling in label order correct even with zero-weight edges.
inline PathResult shortest_path(const WeightedGraph& g, NodeId origin, NodeId destination) {
  g.check_node(origin);
  g.check_node(destination);
  if (origin == destination) return {{origin}, 0.0, true};

  const std::size_t n = g.node_count();
  std::vector<double> dist(n, kInfinity);
  std::vector<std::vector<NodeId>> path(n);
  std::vector<bool> solved(n, false);

  struct Label {
    double dist;
    std::vector<NodeId> path;
  };
  // Stale heap entries (superseded labels) are skipped on extraction.
  auto worse = [](const Label& a, const Label& b) {
    return detail::path_less(b.dist, b.path, a.dist, a.path);
  };
  std::priority_queue<Label, std::vector<Label>, decltype(worse)> frontier(worse);

  dist[origin] = 0.0;
  path[origin] = {origin};
  frontier.push({0.0, path[origin]});

  while (!frontier.empty()) {
    Label top = frontier.top();
    frontier.pop();
    const NodeId u = top.path.back();
    if (solved[u] || top.dist != dist[u] || top.path != path[u]) continue;
    solved[u] = true;
    if (u == destination) break;

    for (const auto& [v, w] : g.neighbors(u)) {
      if (solved[v]) continue;
      double cand = dist[u] + w;
      if (cand > dist[v]) continue;
      std::vector<NodeId> cand_path = path[u];
      cand_path.push_back(v);
      if (cand < dist[v] || cand_path < path[v]) {
        dist[v] = cand;
        path[v] = cand_path;
        frontier.push({cand, std::move(cand_path)});
      }
    }
  }

  if (!solved[destination]) return {{}, kInfinity, false};
  return {path[destination], dist[destination], true};
}

inline constexpr std::size_t kBruteForceMaxNodes = 12;

/// Enumerates every simple origin-destination path. Test oracle: exponential,
/// guarded to small graphs.
inline PathResult brute_force_shortest_path(const WeightedGraph& g, NodeId origin,
                                            NodeId destination) {
  if (g.node_count() > kBruteForceMaxNodes)
    throw std::invalid_argument("brute-force enumeration limited to " +
                                std::to_string(kBruteForceMaxNodes) + " nodes");
  g.check_node(origin);
  g.check_node(destination);
  if (origin == destination) return {{origin}, 0.0, true};

  PathResult best{{}, kInfinity, false};
  std::vector<NodeId> current{origin};
  std::vector<bool> on_path(g.node_count(), false);
  on_path[origin] = true;

  std::function<void(double)> dfs = [&](double weight) {
    NodeId u = current.back();
    if (u == destination) {
      if (!best.valid || detail::path_less(weight, current, best.total_weight, best.nodes)) {
        best = {current, weight, true};
      }
      return;
    }
    for (const auto& [v, w] : g.neighbors(u)) {
      if (on_path[v]) continue;
      on_path[v] = true;
      current.push_back(v);
      dfs(weight + w);
      current.pop_back();
      on_path[v] = false;
    }
  };
  dfs(0.0);
  return best;
}

/// Grows a tree from node 0, always adding the crossing edge with the
/// smallest (weight, u, v).
inline MstResult prim_mst(const WeightedGraph& g) {
  detail::require_mst_input(g);
  const std::size_t n = g.node_count();
  std::vector<bool> in_tree(n, false);
  auto cmp = [](const Edge& a, const Edge& b) { return detail::edge_key_less(b, a); };
  std::priority_queue<Edge, std::vector<Edge>, decltype(cmp)> frontier(cmp);

  auto add_node = [&](NodeId u) {
    in_tree[u] = true;
    for (const auto& [v, w] : g.neighbors(u))
      if (!in_tree[v]) frontier.push({std::min(u, v), std::max(u, v), w});
  };

  std::vector<Edge> chosen;
  chosen.reserve(n - 1);
  add_node(0);
  while (!frontier.empty() && chosen.size() + 1 < n) {
    Edge e = frontier.top();
    frontier.pop();
    bool u_in = in_tree[e.u], v_in = in_tree[e.v];
    if (u_in && v_in) continue;
    chosen.push_back(e);
    add_node(u_in ? e.v : e.u);
  }
  return detail::finish_mst(std::move(chosen));
}

/// Scans edges in (weight, u, v) order, keeping those that join two
/// components.
inline MstResult kruskal_mst(const WeightedGraph& g) {
  detail::require_mst_input(g);
  std::vector<Edge> sorted = g.edges();
  std::sort(sorted.begin(), sorted.end(), detail::edge_key_less);
  UnionFind uf(g.node_count());
  std::vector<Edge> chosen;
  chosen.reserve(g.node_count() - 1);
  for (const auto& e : sorted) {
    if (uf.unite(e.u, e.v)) {
      chosen.push_back(e);
      if (chosen.size() + 1 == g.node_count()) break;
    }
  }
  return detail::finish_mst(std::move(chosen));
}

}  // namespace swarmroute
