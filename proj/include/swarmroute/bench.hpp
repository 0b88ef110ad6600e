#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "swarmroute/exact.hpp"
#include "swarmroute/graph.hpp"
#include "swarmroute/pso.hpp"
#include "swarmroute/random.hpp"
#include "swarmroute/router.hpp"

namespace swarmroute {

enum class GeneratorKind { erdos_renyi, grid, complete };

inline const char* generator_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::erdos_renyi: return "erdos_renyi";
    case GeneratorKind::grid: return "grid";
    case GeneratorKind::complete: return "complete";
  }
  return "?";
}

struct InstanceSpec {
  GeneratorKind generator = GeneratorKind::erdos_renyi;
  std::size_t n = 0;  // erdos_renyi, complete
  double p = 1.0;     // erdos_renyi
  std::size_t rows = 0, cols = 0;  // grid
  double weight_low = 1.0;
  double weight_high = 10.0;
  std::uint64_t seed = 0;
  bool require_connected = true;

  static InstanceSpec erdos_renyi(std::size_t n, double p, std::uint64_t seed,
                                  double low = 1.0, double high = 10.0) {
    return {GeneratorKind::erdos_renyi, n, p, 0, 0, low, high, seed, true};
  }
  static InstanceSpec grid(std::size_t rows, std::size_t cols, std::uint64_t seed,
                           double low = 1.0, double high = 10.0) {
    return {GeneratorKind::grid, rows * cols, 1.0, rows, cols, low, high, seed, true};
  }
  static InstanceSpec complete(std::size_t n, std::uint64_t seed, double low = 1.0,
                               double high = 10.0) {
    return {GeneratorKind::complete, n, 1.0, 0, 0, low, high, seed, true};
  }

  std::size_t node_count() const {
    return generator == GeneratorKind::grid ? rows * cols : n;
  }

  void validate() const {
    if (generator == GeneratorKind::erdos_renyi && !(p > 0.0 && p <= 1.0))
      throw std::invalid_argument("edge probability must be in (0, 1]");
    if (!(weight_low >= 0.0) || !(weight_low < weight_high) || !std::isfinite(weight_high))
      throw std::invalid_argument("weight range must satisfy 0 <= low < high");
    if (node_count() < 1) throw std::invalid_argument("instance needs at least one node");
  }

  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

inline constexpr std::size_t kMaxConnectAttempts = 1000;

/// Deterministic graph for `spec`. Weights are uniform in [low, high).
/// Erdős–Rényi draws one uniform per node pair (i < j) and a weight for each
/// kept edge; with require_connected the same stream is re-sampled until the
/// graph is connected.
inline WeightedGraph generate_instance(const InstanceSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const std::size_t n = spec.node_count();
  auto weight = [&] { return uniform(rng, spec.weight_low, spec.weight_high); };

  std::vector<Edge> edges;
  switch (spec.generator) {
    case GeneratorKind::complete:
      for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j, weight()});
      return build_graph(n, edges);
    case GeneratorKind::grid:
      for (std::size_t r = 0; r < spec.rows; ++r) {
        for (std::size_t c = 0; c < spec.cols; ++c) {
          auto id = static_cast<NodeId>(r * spec.cols + c);
          if (c + 1 < spec.cols) edges.push_back({id, id + 1, weight()});
          if (r + 1 < spec.rows)
            edges.push_back({id, static_cast<NodeId>(id + spec.cols), weight()});
        }
      }
      return build_graph(n, edges);
    case GeneratorKind::erdos_renyi:
      for (std::size_t attempt = 0; attempt < kMaxConnectAttempts; ++attempt) {
        edges.clear();
        for (NodeId i = 0; i < n; ++i)
          for (NodeId j = i + 1; j < n; ++j)
            if (uniform01(rng) < spec.p) edges.push_back({i, j, weight()});
        WeightedGraph g = build_graph(n, edges);
        if (!spec.require_connected || is_connected(g)) return g;
      }
      throw std::runtime_error("no connected graph after " +
                               std::to_string(kMaxConnectAttempts) +
                               " attempts; edge probability too small");
  }
  throw std::logic_error("unknown generator");
}

inline constexpr double kOptimumTolerance = 1e-9;

struct BenchResult {
  std::size_t instance_id = 0;
  std::string generator;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::size_t repeat = 0;
  double exact_weight = 0.0;
  double pso_weight = 0.0;
  bool success = false;
  std::optional<std::size_t> iters_to_opt;
  double invalid_rate = 0.0;
  double exact_ms = 0.0;
  double pso_ms = 0.0;
  /// Full run, kept for monotonicity and determinism checks.
  RunReport report;

  double approx_ratio() const {
    if (exact_weight == 0.0) return pso_weight == 0.0 ? 1.0 : kInfinity;
    return pso_weight / exact_weight;
  }
};

struct InstanceError {
  std::size_t instance_id;
  std::string message;
};

struct SuiteSummary {
  std::size_t cells = 0;
  std::size_t instances = 0;
  std::size_t failed_instances = 0;
  std::optional<double> success_rate_mean;
  std::optional<double> success_rate_median;  // of per-instance rates
  std::optional<double> mean_iters_to_opt;    // over successful cells
  std::optional<double> mean_invalid_rate;
  std::optional<double> mean_approx_ratio;    // over cells with a valid path
};

struct SuiteReport {
  std::vector<BenchResult> results;  // (instance, repeat) order
  std::vector<InstanceError> errors;
  SuiteSummary summary;
};

struct SuiteOptions {
  std::size_t jobs = 1;
  /// Record wall-clock columns. Off by default so the CSV is reproducible.
  bool timing = false;
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

inline SuiteSummary summarize(const std::vector<BenchResult>& results, std::size_t instances,
                              std::size_t failed) {
  SuiteSummary s;
  s.cells = results.size();
  s.instances = instances;
  s.failed_instances = failed;
  if (results.empty()) return s;

  double succ = 0, invalid = 0, iters = 0, ratio = 0;
  std::size_t n_iters = 0, n_ratio = 0;
  std::vector<double> per_instance;
  std::size_t run_start = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    succ += r.success ? 1.0 : 0.0;
    invalid += r.invalid_rate;
    if (r.iters_to_opt) {
      iters += static_cast<double>(*r.iters_to_opt);
      ++n_iters;
    }
    if (r.report.best_path.valid) {
      ratio += r.approx_ratio();
      ++n_ratio;
    }
    bool last = i + 1 == results.size() || results[i + 1].instance_id != r.instance_id;
    if (last) {
      double k = 0;
      for (std::size_t j = run_start; j <= i; ++j) k += results[j].success ? 1.0 : 0.0;
      per_instance.push_back(k / static_cast<double>(i + 1 - run_start));
      run_start = i + 1;
    }
  }
  const auto cells = static_cast<double>(results.size());
  s.success_rate_mean = succ / cells;
  s.mean_invalid_rate = invalid / cells;
  if (n_iters) s.mean_iters_to_opt = iters / static_cast<double>(n_iters);
  if (n_ratio) s.mean_approx_ratio = ratio / static_cast<double>(n_ratio);
  std::sort(per_instance.begin(), per_instance.end());
  std::size_t mid = per_instance.size() / 2;
  s.success_rate_median = per_instance.size() % 2
                              ? per_instance[mid]
                              : 0.5 * (per_instance[mid - 1] + per_instance[mid]);
  return s;
}

}  // namespace detail

/// Solves every instance exactly (origin node 1, destination node n) and
/// `repeats` times with the swarm, each repeat under a distinct seed derived
/// from (config.seed, instance seed, instance index, repeat). The swarm stops
/// early once it reaches the exact optimum. Instances that fail to generate
/// are reported in `errors` and skipped.
///
/// Throws std::logic_error if the swarm ever beats the exact optimum.
inline SuiteReport run_suite(const std::vector<InstanceSpec>& specs, const SwarmConfig& config,
                             std::size_t repeats, const SuiteOptions& options = {}) {
  config.validate();
  SuiteReport out;
  if (repeats == 0) return out;

  struct Prepared {
    std::size_t id;
    std::optional<RoutingProblem> problem;
    PathResult exact;
    double exact_ms;
  };
  std::vector<Prepared> prepared;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      WeightedGraph g = generate_instance(specs[i]);
      if (g.node_count() < 2) throw std::invalid_argument("instance needs at least two nodes");
      auto destination = static_cast<NodeId>(g.node_count() - 1);
      auto t0 = std::chrono::steady_clock::now();
      PathResult exact = shortest_path(g, 0, destination);
      double exact_ms = detail::ms_since(t0);
      if (!exact.valid) throw std::runtime_error("destination unreachable from origin");
      prepared.push_back({i, RoutingProblem(std::move(g), 0, destination), exact,
                          options.timing ? exact_ms : 0.0});
    } catch (const std::exception& e) {
      out.errors.push_back({i, e.what()});
    }
  }

  out.results.resize(prepared.size() * repeats);
  auto run_cell = [&](std::size_t cell) {
    const Prepared& prep = prepared[cell / repeats];
    const std::size_t repeat = cell % repeats;
    const InstanceSpec& spec = specs[prep.id];

    SwarmConfig cfg = config;
    cfg.seed = derive_seed({config.seed, spec.seed, prep.id, repeat});
    cfg.target_fitness = prep.exact.total_weight + kOptimumTolerance;

    BenchResult r;
    r.instance_id = prep.id;
    r.generator = generator_name(spec.generator);
    r.n = prep.problem->graph.node_count();
    r.m = prep.problem->graph.edge_count();
    r.seed = spec.seed;
    r.repeat = repeat;
    r.exact_weight = prep.exact.total_weight;
    r.exact_ms = prep.exact_ms;
    r.report = solve(*prep.problem, cfg);
    r.pso_weight = r.report.best_path.valid ? r.report.best_path.total_weight : kInfinity;
    r.pso_ms = options.timing
                   ? std::chrono::duration<double, std::milli>(r.report.wall_time).count()
                   : 0.0;
    r.invalid_rate = r.report.invalid_decode_rate();
    r.success = std::abs(r.pso_weight - r.exact_weight) <= kOptimumTolerance;
    if (r.success) {
      const auto& trace = r.report.gbest_trace;
      for (std::size_t k = 0; k < trace.size(); ++k) {
        if (trace[k] <= r.exact_weight + kOptimumTolerance) {
          r.iters_to_opt = k;
          break;
        }
      }
    }
    out.results[cell] = std::move(r);
  };

  const std::size_t cells = out.results.size();
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, cells));
  if (jobs == 1) {
    for (std::size_t c = 0; c < cells; ++c) run_cell(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(jobs);
    std::vector<std::thread> workers;
    for (std::size_t t = 0; t < jobs; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t c; (c = next.fetch_add(1)) < cells;) run_cell(c);
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& f : failures)
      if (f) std::rethrow_exception(f);
  }

  for (const auto& r : out.results) {
    if (r.pso_weight < r.exact_weight - kOptimumTolerance)
      throw std::logic_error("swarm path on instance " + std::to_string(r.instance_id) +
                             " is lighter than the exact optimum");
  }
  out.summary = detail::summarize(out.results, specs.size(), out.errors.size());
  return out;
}

inline constexpr const char* kBenchCsvHeader =
    "instance_id,generator,n,m,seed,repeat,exact_weight,pso_weight,success,iters_to_opt,"
    "invalid_rate,exact_ms,pso_ms";

inline std::string format_suite_csv(const SuiteReport& suite) {
  std::string out = std::string(kBenchCsvHeader) + "\n";
  for (const auto& r : suite.results) {
    out += std::to_string(r.instance_id + 1) + ',' + r.generator + ',' + std::to_string(r.n) +
           ',' + std::to_string(r.m) + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.repeat) + ',' + format_weight(r.exact_weight) + ',' +
           format_weight(r.pso_weight) + ',' + (r.success ? "1" : "0") + ',' +
           (r.iters_to_opt ? std::to_string(*r.iters_to_opt) : "") + ',' +
           format_weight(r.invalid_rate) + ',' + format_weight(r.exact_ms) + ',' +
           format_weight(r.pso_ms) + '\n';
  }
  for (const auto& e : suite.errors)
    out += "# error: instance " + std::to_string(e.instance_id + 1) + ": " + e.message + "\n";

  const auto& s = suite.summary;
  auto opt = [](const std::optional<double>& v) { return v ? format_weight(*v) : "none"; };
  out += "# summary: cells=" + std::to_string(s.cells) +
         " instances=" + std::to_string(s.instances) +
         " failed_instances=" + std::to_string(s.failed_instances) + "\n";
  out += "# summary: success_rate_mean=" + opt(s.success_rate_mean) + "\n";
  out += "# summary: success_rate_median=" + opt(s.success_rate_median) + "\n";
  out += "# summary: mean_iters_to_opt=" + opt(s.mean_iters_to_opt) + "\n";
  out += "# summary: mean_invalid_rate=" + opt(s.mean_invalid_rate) + "\n";
  out += "# summary: mean_approx_ratio=" + opt(s.mean_approx_ratio) + "\n";
  return out;
}

/// Suite file: one record per line,
///
///   <generator> <n> <p> <weight_low> <weight_high> <seed> [count]
///
/// generator is erdos_renyi (or er), complete, or grid; for grid, n is
/// written RxC and p is ignored. count > 1 expands to consecutive seeds.
/// '#' starts a comment line.
inline std::vector<InstanceSpec> parse_suite(std::istream& in) {
  std::vector<InstanceSpec> specs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (toks.size() != 6 && toks.size() != 7)
      throw ParseError(lineno,
                       "expected '<generator> <n> <p> <weight_low> <weight_high> <seed> [count]'");

    InstanceSpec spec;
    if (toks[0] == "erdos_renyi" || toks[0] == "er")
      spec.generator = GeneratorKind::erdos_renyi;
    else if (toks[0] == "complete")
      spec.generator = GeneratorKind::complete;
    else if (toks[0] == "grid")
      spec.generator = GeneratorKind::grid;
    else
      throw ParseError(lineno, "unknown generator '" + std::string(toks[0]) + "'");

    if (spec.generator == GeneratorKind::grid) {
      auto x = toks[1].find('x');
      if (x == std::string_view::npos) throw ParseError(lineno, "grid size must be RxC");
      auto r = detail::parse_number<std::size_t>(toks[1].substr(0, x));
      auto c = detail::parse_number<std::size_t>(toks[1].substr(x + 1));
      if (!r || !c) throw ParseError(lineno, "grid size must be RxC");
      spec.rows = *r;
      spec.cols = *c;
      spec.n = *r * *c;
    } else {
      auto n = detail::parse_number<std::size_t>(toks[1]);
      if (!n) throw ParseError(lineno, "node count must be a non-negative integer");
      spec.n = *n;
    }
    auto p = detail::parse_number<double>(toks[2]);
    auto lo = detail::parse_number<double>(toks[3]);
    auto hi = detail::parse_number<double>(toks[4]);
    auto seed = detail::parse_number<std::uint64_t>(toks[5]);
    if (!p || !lo || !hi) throw ParseError(lineno, "p and weight bounds must be numbers");
    if (!seed) throw ParseError(lineno, "seed must be a non-negative integer");
    spec.p = *p;
    spec.weight_low = *lo;
    spec.weight_high = *hi;
    spec.seed = *seed;
    std::size_t count = 1;
    if (toks.size() == 7) {
      auto k = detail::parse_number<std::size_t>(toks[6]);
      if (!k || *k == 0) throw ParseError(lineno, "count must be a positive integer");
      count = *k;
    }
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    for (std::size_t k = 0; k < count; ++k) {
      specs.push_back(spec);
      specs.back().seed = spec.seed + k;
    }
  }
  return specs;
}

}  // namespace swarmroute
