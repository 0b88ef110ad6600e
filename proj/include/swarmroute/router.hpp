#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmroute/decoder.hpp"
#include "swarmroute/graph.hpp"
#include "swarmroute/pso.hpp"
#include "swarmroute/random.hpp"

namespace swarmroute {

struct RoutingProblem {
  WeightedGraph graph;
  NodeId origin;
  NodeId destination;

  RoutingProblem(WeightedGraph g, NodeId from, NodeId to)
      : graph(std::move(g)), origin(from), destination(to) {
    graph.check_node(origin);
    graph.check_node(destination);
    if (origin == destination)
      throw std::invalid_argument("routing problem needs distinct origin and destination");
  }

  /// 1 + sum of all edge weights: larger than any simple path's weight.
  double penalty() const { return 1.0 + graph.total_weight(); }
};

/// Random per-evaluation scaling of the weights along a decoded path.
struct JitterConfig {
  double amplitude = 0.0;

  friend bool operator==(const JitterConfig&, const JitterConfig&) = default;
};

/// Transient weights for the edges of one path. The graph itself is never
/// modified.
struct WeightOverlay {
  std::vector<Edge> path_edges;  // (nodes[i], nodes[i+1], perturbed weight)

  double total() const {
    double sum = 0.0;
    for (const auto& e : path_edges) sum += e.weight;
    return sum;
  }
};

/// Each edge along `path` gets weight * U[1 - a, 1 + a), floored at zero.
/// One draw per edge, in path order.
inline WeightOverlay apply_weight_jitter(const WeightedGraph& g, const PathResult& path,
                                         const JitterConfig& jitter, Rng& rng) {
  if (!(jitter.amplitude >= 0.0)) throw std::invalid_argument("jitter amplitude must be >= 0");
  WeightOverlay overlay;
  for (std::size_t i = 1; i < path.nodes.size(); ++i) {
    NodeId u = path.nodes[i - 1], v = path.nodes[i];
    auto w = g.edge_weight(u, v);
    if (!w) throw std::invalid_argument("path uses an edge that is not in the graph");
    double factor = uniform(rng, 1.0 - jitter.amplitude, 1.0 + jitter.amplitude);
    overlay.path_edges.push_back({u, v, std::max(0.0, *w * factor)});
  }
  return overlay;
}

/// Path weight of the decoded priorities, or `penalty` (plus
/// `unreached_weight` per node the walk never reached) on a dead end.
inline double route_fitness(std::span<const double> priorities, const RoutingProblem& problem,
                            double penalty, double unreached_weight = 0.0) {
  PathResult p = decode_path(priorities, problem.graph, problem.origin, problem.destination);
  if (p.valid) return p.total_weight;
  double unreached = static_cast<double>(problem.graph.node_count() - p.nodes.size());
  return penalty + unreached_weight * unreached;
}

struct RunReport {
  PathResult best_path;
  /// gbest fitness after initialisation, then after each iteration.
  std::vector<double> gbest_trace;
  std::size_t iterations_run = 0;
  std::size_t evaluations = 0;
  std::size_t invalid_decode_count = 0;
  std::chrono::nanoseconds wall_time{0};
  SwarmConfig config_echo;
  std::optional<JitterConfig> jitter_echo;

  double invalid_decode_rate() const {
    return evaluations == 0 ? 0.0
                            : static_cast<double>(invalid_decode_count) /
                                  static_cast<double>(evaluations);
  }

  /// Wall time is excluded: two seeded runs compare equal iff they made the
  /// same decisions.
  friend bool operator==(const RunReport& a, const RunReport& b) {
    return a.best_path == b.best_path && a.gbest_trace == b.gbest_trace &&
           a.iterations_run == b.iterations_run && a.evaluations == b.evaluations &&
           a.invalid_decode_count == b.invalid_decode_count && a.config_echo == b.config_echo &&
           a.jitter_echo == b.jitter_echo;
  }
};

/// Runs the swarm over node-priority vectors. Fitness is the decoded path
/// weight (penalised on dead ends); with jitter each evaluation scores the path
/// under a fresh random overlay. Stops early once gbest reaches
/// config.target_fitness.
///
/// best_path is gbest decoded against the unperturbed graph, so with jitter
/// its weight may differ from the last trace entry.
inline RunReport solve(const RoutingProblem& problem, const SwarmConfig& config,
                       std::optional<JitterConfig> jitter = std::nullopt) {
  config.validate();
  if (jitter && !(jitter->amplitude >= 0.0))
    throw std::invalid_argument("jitter amplitude must be >= 0");
  const auto start = std::chrono::steady_clock::now();

  RunReport report;
  report.config_echo = config;
  report.jitter_echo = jitter;

  const double penalty = problem.penalty();
  Rng jitter_rng(derive_seed({config.seed, 0x6a177e5ULL}));
  auto fitness = [&](std::span<const double> priorities) {
    ++report.evaluations;
    PathResult p = decode_path(priorities, problem.graph, problem.origin,
                               problem.destination);
    if (!p.valid) {
      ++report.invalid_decode_count;
      return penalty;
    }
    if (jitter && jitter->amplitude > 0.0)
      return apply_weight_jitter(problem.graph, p, *jitter, jitter_rng).total();
    return p.total_weight;
  };
  auto reached_target = [&](const SwarmState& s) {
    return config.target_fitness && s.gbest_fitness <= *config.target_fitness;
  };

  SwarmState state = init_swarm(config, problem.graph.node_count(), fitness);
  report.gbest_trace.push_back(state.gbest_fitness);
  while (state.iteration < config.max_iterations && !reached_target(state)) {
    step(state, fitness, config);
    report.gbest_trace.push_back(state.gbest_fitness);
  }
  report.iterations_run = state.iteration;

  report.best_path =
      decode_path(state.gbest_position, problem.graph, problem.origin, problem.destination);
  if (!report.best_path.valid) report.best_path.total_weight = penalty;
  report.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return report;
}

namespace detail {

inline std::string join_ids(const std::vector<NodeId>& nodes) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(nodes[i] + 1);
  }
  return s;
}

}  // namespace detail

/// One key=value per line; node ids 1-based. wall_ms is only written when
/// requested so the default output is reproducible.
inline std::string serialize_report(const RunReport& r, bool include_timing = false) {
  std::string out;
  auto kv = [&](const std::string& k, const std::string& v) { out += k + "=" + v + "\n"; };
  const auto& c = r.config_echo;
  kv("valid", r.best_path.valid ? "true" : "false");
  kv("path", detail::join_ids(r.best_path.nodes));
  kv("weight", format_weight(r.best_path.total_weight));
  kv("iterations_run", std::to_string(r.iterations_run));
  kv("evaluations", std::to_string(r.evaluations));
  kv("invalid_decodes", std::to_string(r.invalid_decode_count));
  kv("invalid_rate", format_weight(r.invalid_decode_rate()));
  std::string trace;
  for (std::size_t i = 0; i < r.gbest_trace.size(); ++i) {
    if (i) trace += ',';
    trace += format_weight(r.gbest_trace[i]);
  }
  kv("gbest_trace", trace);
  kv("population", std::to_string(c.population));
  kv("max_iterations", std::to_string(c.max_iterations));
  kv("inertia_w", format_weight(c.inertia_w));
  kv("cognitive_c1", format_weight(c.cognitive_c1));
  kv("social_c2", format_weight(c.social_c2));
  kv("vmax", format_weight(c.vmax));
  kv("init_low", format_weight(c.init_low));
  kv("init_high", format_weight(c.init_high));
  kv("seed", std::to_string(c.seed));
  kv("repulsion_enabled", c.repulsion_enabled ? "true" : "false");
  kv("repulsion_strength", format_weight(c.repulsion_strength));
  kv("target_fitness", c.target_fitness ? format_weight(*c.target_fitness) : "none");
  kv("jitter_amplitude", r.jitter_echo ? format_weight(r.jitter_echo->amplitude) : "none");
  if (include_timing)
    kv("wall_ms", format_weight(std::chrono::duration<double, std::milli>(r.wall_time).count()));
  return out;
}

}  // namespace swarmroute
