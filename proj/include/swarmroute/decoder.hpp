#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmroute/graph.hpp"

namespace swarmroute {

struct DecodeStep {
  std::size_t iteration = 0;
  NodeId chosen = 0;
  std::vector<NodeId> partial_path;

  friend bool operator==(const DecodeStep&, const DecodeStep&) = default;
};

struct DecodeTrace {
  enum class Outcome { success, dead_end };

  std::vector<DecodeStep> steps;
  Outcome outcome = Outcome::dead_end;

  friend bool operator==(const DecodeTrace&, const DecodeTrace&) = default;
};

struct DecodeResult {
  PathResult path;
  DecodeTrace trace;
};

namespace detail {

inline void check_decode_args(std::span<const double> priorities, const WeightedGraph& g,
                              NodeId origin, NodeId destination) {
  if (priorities.size() != g.node_count())
    throw std::invalid_argument("priority vector has " + std::to_string(priorities.size()) +
                                " entries, graph has " + std::to_string(g.node_count()) +
                                " nodes");
  g.check_node(origin);
  g.check_node(destination);
}

/// Greedy walk shared by decode and decode_path. `on_step` sees each
/// extension of the path.
template <typename OnStep>
PathResult greedy_walk(std::span<const double> priorities, const WeightedGraph& g,
                       NodeId origin, NodeId destination, OnStep&& on_step) {
  PathResult result;
  result.nodes.push_back(origin);
  on_step(origin, result.nodes);
  if (origin == destination) {
    result.total_weight = 0.0;
    result.valid = true;
    return result;
  }

  std::vector<bool> visited(g.node_count(), false);
  visited[origin] = true;
  double weight = 0.0;
  NodeId current = origin;
  while (true) {
    // Adjacency is sorted by id, so strict '>' keeps the lowest id on ties.
    const Neighbor* pick = nullptr;
    for (const auto& nb : g.neighbors(current)) {
      if (visited[nb.node]) continue;
      if (pick == nullptr || priorities[nb.node] > priorities[pick->node]) pick = &nb;
    }
    if (pick == nullptr) {
      result.total_weight = kInfinity;
      result.valid = false;
      return result;
    }
    current = pick->node;
    visited[current] = true;
    weight += pick->weight;
    result.nodes.push_back(current);
    on_step(current, result.nodes);
    if (current == destination) {
      result.total_weight = weight;
      result.valid = true;
      return result;
    }
  }
}

}  // namespace detail

/// Builds a path from a node-priority vector: from the origin, repeatedly
/// step to the unvisited neighbor with the highest priority (lowest id on
/// ties) until the destination is reached or no unvisited neighbor is left.
/// The origin's own priority is never consulted. A dead end yields
/// valid = false with infinite weight and the partial walk in `nodes`.
inline DecodeResult decode(std::span<const double> priorities, const WeightedGraph& g,
                           NodeId origin, NodeId destination) {
  detail::check_decode_args(priorities, g, origin, destination);
  DecodeResult out;
  out.path = detail::greedy_walk(priorities, g, origin, destination,
                                 [&](NodeId chosen, const std::vector<NodeId>& partial) {
                                   out.trace.steps.push_back(
                                       {out.trace.steps.size(), chosen, partial});
                                 });
  out.trace.outcome =
      out.path.valid ? DecodeTrace::Outcome::success : DecodeTrace::Outcome::dead_end;
  return out;
}

/// decode without the trace, for the fitness hot path.
inline PathResult decode_path(std::span<const double> priorities, const WeightedGraph& g,
                              NodeId origin, NodeId destination) {
  detail::check_decode_args(priorities, g, origin, destination);
  return detail::greedy_walk(priorities, g, origin, destination,
                             [](NodeId, const std::vector<NodeId>&) {});
}

/// Renders a trace as one row per iteration: the priority of every node,
/// with nodes already on the path masked by a filled circle, followed by the
/// path so far. Ends with the outcome, weight and final path.
inline std::string format_trace(const DecodeResult& result, std::span<const double> priorities) {
  const std::size_t n = priorities.size();
  std::vector<std::string> cells(n);
  std::size_t width = 1;
  for (std::size_t i = 0; i < n; ++i) {
    cells[i] = format_weight(priorities[i]);
    width = std::max({width, cells[i].size(), std::to_string(i + 1).size()});
  }
  auto pad = [&](const std::string& s) { return std::string(width - s.size() + 1, ' ') + s; };
  auto join = [](const std::vector<NodeId>& nodes, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (i) s += sep;
      s += std::to_string(nodes[i] + 1);
    }
    return s;
  };

  std::string out = "iter";
  for (std::size_t i = 0; i < n; ++i) out += pad(std::to_string(i + 1));
  out += "  path\n";
  for (const auto& st : result.trace.steps) {
    std::vector<bool> masked(n, false);
    for (NodeId v : st.partial_path) masked[v] = true;
    std::string label = "i" + std::to_string(st.iteration);
    out += label + std::string(label.size() < 4 ? 4 - label.size() : 0, ' ');
    for (std::size_t i = 0; i < n; ++i) {
      // The mask glyph is one column wide but three bytes long.
      out += masked[i] ? std::string(width, ' ') + "●" : pad(cells[i]);
    }
    out += "  (" + join(st.partial_path, ",") + ")\n";
  }
  if (result.path.valid) {
    out += "success\n";
    out += "weight " + format_weight(result.path.total_weight) + "\n";
  } else {
    out += "dead_end\n";
  }
  out += "path " + join(result.path.nodes, " ") + "\n";
  return out;
}

}  // namespace swarmroute
