#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

namespace swarmroute {

/// 0-based node index. Text formats and the CLI use 1-based ids.
using NodeId = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node = 0;
  double weight = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// A node sequence with its summed weight. Invalid results carry whatever
/// weight the producer assigns (infinity for unreachable, a penalty in the
/// router).
struct PathResult {
  std::vector<NodeId> nodes;
  double total_weight = kInfinity;
  bool valid = false;

  friend bool operator==(const PathResult&, const PathResult&) = default;
};

class GraphError : public std::invalid_argument {
 public:
  enum class Kind {
    invalid_node_count,
    endpoint_out_of_range,
    negative_weight,
    non_finite_weight,
    duplicate_edge,
    self_loop,
    node_out_of_range,
    not_undirected,
    disconnected,
  };

  GraphError(Kind kind, const std::string& what,
             std::optional<std::size_t> edge_index = std::nullopt)
      : std::invalid_argument(what), kind_(kind), edge_index_(edge_index) {}

  Kind kind() const noexcept { return kind_; }
  /// Index into the edge list passed to build_graph, when an edge is at fault.
  std::optional<std::size_t> edge_index() const noexcept { return edge_index_; }

 private:
  Kind kind_;
  std::optional<std::size_t> edge_index_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what,
             std::optional<GraphError::Kind> cause = std::nullopt)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line),
        cause_(cause) {}

  std::size_t line() const noexcept { return line_; }
  /// Set when the line was well-formed but described an invalid edge.
  std::optional<GraphError::Kind> cause() const noexcept { return cause_; }

 private:
  std::size_t line_;
  std::optional<GraphError::Kind> cause_;
};

/// Shortest round-trippable decimal form of a weight ("2", "3.75", "1e-05").
inline std::string format_weight(double w) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, res.ptr);
}

class WeightedGraph;
WeightedGraph build_graph(std::size_t node_count, std::span<const Edge> edges,
                          bool directed = false);

/// Immutable simple graph with non-negative weights, stored as per-node
/// adjacency lists sorted by neighbor id.
class WeightedGraph {
 public:
  std::size_t node_count() const noexcept { return adjacency_.size(); }
  bool directed() const noexcept { return directed_; }
  /// Number of edges as given (an undirected edge counts once).
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Neighbor> neighbors(NodeId u) const {
    check_node(u);
    return adjacency_[u];
  }

  /// Canonical edge list: sorted by (u, v); undirected edges have u < v.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<double> edge_weight(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    const auto& adj = adjacency_[u];
    auto it = std::lower_bound(
        adj.begin(), adj.end(), v,
        [](const Neighbor& n, NodeId id) { return n.node < id; });
    if (it == adj.end() || it->node != v) return std::nullopt;
    return it->weight;
  }

  double total_weight() const noexcept {
    double sum = 0.0;
    for (const auto& e : edges_) sum += e.weight;
    return sum;
  }

  void check_node(NodeId u) const {
    if (u >= adjacency_.size())
      throw GraphError(GraphError::Kind::node_out_of_range,
                       "node " + std::to_string(u + 1) + " out of range (graph has " +
                           std::to_string(adjacency_.size()) + " nodes)");
  }

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  friend WeightedGraph build_graph(std::size_t, std::span<const Edge>, bool);

  WeightedGraph() = default;

  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<Edge> edges_;
  bool directed_ = false;
};

/// Validates and builds a graph from 0-based edges. Undirected edges are
/// mirrored into both adjacency lists.
inline WeightedGraph build_graph(std::size_t node_count, std::span<const Edge> edges,
                                 bool directed) {
  using Kind = GraphError::Kind;
  if (node_count == 0)
    throw GraphError(Kind::invalid_node_count, "graph must have at least one node");
  if (node_count > std::numeric_limits<NodeId>::max())
    throw GraphError(Kind::invalid_node_count, "too many nodes");

  auto describe = [](std::size_t i, const Edge& e) {
    return "edge #" + std::to_string(i + 1) + " (" + std::to_string(e.u + 1) + ", " +
           std::to_string(e.v + 1) + ", " + format_weight(e.weight) + ")";
  };

  WeightedGraph g;
  g.directed_ = directed;
  g.adjacency_.resize(node_count);
  g.edges_.reserve(edges.size());

  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u >= node_count || e.v >= node_count)
      throw GraphError(Kind::endpoint_out_of_range, describe(i, e) + ": endpoint out of range", i);
    if (e.u == e.v) throw GraphError(Kind::self_loop, describe(i, e) + ": self-loop", i);
    if (!std::isfinite(e.weight))
      throw GraphError(Kind::non_finite_weight, describe(i, e) + ": weight is not finite", i);
    if (e.weight < 0.0)
      throw GraphError(Kind::negative_weight, describe(i, e) + ": negative weight", i);

    Edge canon = e;
    if (!directed && canon.u > canon.v) std::swap(canon.u, canon.v);
    g.edges_.push_back(canon);
  }

  // Stable sort keeps the first occurrence first, so a duplicate is reported
  // against the later edge in input order.
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = g.edges_[a];
    const auto& eb = g.edges_[b];
    return std::pair(ea.u, ea.v) < std::pair(eb.u, eb.v);
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const auto& prev = g.edges_[order[k - 1]];
    const auto& cur = g.edges_[order[k]];
    if (prev.u == cur.u && prev.v == cur.v) {
      std::size_t i = std::max(order[k - 1], order[k]);
      throw GraphError(Kind::duplicate_edge, describe(i, edges[i]) + ": duplicate edge", i);
    }
  }

  std::vector<Edge> sorted;
  sorted.reserve(order.size());
  for (auto i : order) sorted.push_back(g.edges_[i]);
  g.edges_ = std::move(sorted);

  for (const auto& e : g.edges_) {
    g.adjacency_[e.u].push_back({e.v, e.weight});
    if (!directed) g.adjacency_[e.v].push_back({e.u, e.weight});
  }
  for (auto& adj : g.adjacency_)
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  return g;
}

inline WeightedGraph build_graph(std::size_t node_count, std::initializer_list<Edge> edges,
                                 bool directed = false) {
  return build_graph(node_count, std::span<const Edge>(edges.begin(), edges.size()), directed);
}

/// True iff every node is reachable from node 0, ignoring edge direction.
inline bool is_connected(const WeightedGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<NodeId>> undirected(n);
  for (const auto& e : g.edges()) {
    undirected[e.u].push_back(e.v);
    undirected[e.v].push_back(e.u);
  }
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : undirected[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

/// Sum of edge weights along `nodes` if it is a simple path in `g`.
inline std::optional<double> simple_path_weight(const WeightedGraph& g,
                                                std::span<const NodeId> nodes) {
  if (nodes.empty()) return std::nullopt;
  std::vector<bool> seen(g.node_count(), false);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] >= g.node_count() || seen[nodes[i]]) return std::nullopt;
    seen[nodes[i]] = true;
    if (i > 0) {
      auto w = g.edge_weight(nodes[i - 1], nodes[i]);
      if (!w) return std::nullopt;
      sum += *w;
    }
  }
  return sum;
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view tok) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
  return value;
}

}  // namespace detail

/// Parses the edge-list format:
///
///   # comment
///   p <node_count> <edge_count> <u|d>
///   <u> <v> <weight>        (1-based ids, exactly edge_count lines)
///
/// Blank lines are ignored.
inline WeightedGraph parse_graph(std::istream& in) {
  std::optional<std::size_t> node_count, edge_count;
  bool directed = false;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;

  std::string line;
  std::size_t lineno = 0;
  std::size_t header_line = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;

    if (toks[0] == "p") {
      if (node_count) throw ParseError(lineno, "duplicate header");
      if (toks.size() != 4) throw ParseError(lineno, "header must be 'p <nodes> <edges> <u|d>'");
      auto n = detail::parse_number<std::size_t>(toks[1]);
      auto m = detail::parse_number<std::size_t>(toks[2]);
      if (!n || !m) throw ParseError(lineno, "header counts must be non-negative integers");
      if (toks[3] == "u")
        directed = false;
      else if (toks[3] == "d")
        directed = true;
      else
        throw ParseError(lineno, "header direction must be 'u' or 'd'");
      node_count = n;
      edge_count = m;
      header_line = lineno;
      continue;
    }

    if (!node_count) throw ParseError(lineno, "edge line before header");
    if (toks.size() != 3) throw ParseError(lineno, "edge line must be '<u> <v> <weight>'");
    auto u = detail::parse_number<std::uint64_t>(toks[0]);
    auto v = detail::parse_number<std::uint64_t>(toks[1]);
    auto w = detail::parse_number<double>(toks[2]);
    if (!u || !v) throw ParseError(lineno, "node ids must be positive integers");
    if (!w) throw ParseError(lineno, "malformed weight '" + std::string(toks[2]) + "'");
    if (*u == 0 || *v == 0 || *u > *node_count || *v > *node_count)
      throw ParseError(lineno, "node id out of range 1.." + std::to_string(*node_count),
                       GraphError::Kind::endpoint_out_of_range);
    if (edges.size() == *edge_count)
      throw ParseError(lineno, "more edge lines than the header's " +
                                   std::to_string(*edge_count));
    edges.push_back({static_cast<NodeId>(*u - 1), static_cast<NodeId>(*v - 1), *w});
    edge_lines.push_back(lineno);
  }

  if (!node_count) throw ParseError(lineno == 0 ? 1 : lineno, "missing header");
  if (edges.size() != *edge_count)
    throw ParseError(header_line, "header declares " + std::to_string(*edge_count) +
                                      " edges but " + std::to_string(edges.size()) +
                                      " were given");
  try {
    return build_graph(*node_count, edges, directed);
  } catch (const GraphError& e) {
    std::size_t at = e.edge_index() ? edge_lines[*e.edge_index()] : header_line;
    throw ParseError(at, e.what(), e.kind());
  }
}

inline WeightedGraph parse_graph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

/// Canonical text form: header, then edges sorted by (u, v) in shortest
/// round-trip decimal.
inline std::string serialize_graph(const WeightedGraph& g) {
  std::string out = "p " + std::to_string(g.node_count()) + " " +
                    std::to_string(g.edge_count()) + (g.directed() ? " d\n" : " u\n");
  for (const auto& e : g.edges()) {
    out += std::to_string(e.u + 1);
    out += ' ';
    out += std::to_string(e.v + 1);
    out += ' ';
    out += format_weight(e.weight);
    out += '\n';
  }
  return out;
}

}  // namespace swarmroute
