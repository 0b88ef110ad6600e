#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "swarmroute/swarmroute.hpp"

namespace swarmroute::cli {
namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

WeightedGraph load_graph(const std::string& path) {
  if (path == "-") return parse_graph(std::cin);
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  try {
    return parse_graph(in);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

NodeId to_node(const WeightedGraph& g, std::size_t one_based, const char* flag) {
  if (one_based < 1 || one_based > g.node_count())
    throw InputError(std::string(flag) + " " + std::to_string(one_based) +
                     " is not a node of the graph (1.." + std::to_string(g.node_count()) + ")");
  return static_cast<NodeId>(one_based - 1);
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

std::string join_nodes(const std::vector<NodeId>& nodes) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(nodes[i] + 1);
  }
  return s;
}

struct SwarmFlags {
  std::size_t population = 20;
  std::size_t iterations = 300;
  double inertia = 0.729;
  double c1 = 1.49445;
  double c2 = 1.49445;
  std::optional<double> vmax;
  double init_low = 0.0;
  double init_high = 1.0;
  std::uint64_t seed = 0;
  std::optional<double> repulsion;

  void add_to(CLI::App* app) {
    app->add_option("--seed", seed, "Random seed (required)")->required();
    app->add_option("--population", population, "Particles in the swarm")
        ->capture_default_str();
    app->add_option("--iterations", iterations, "Maximum iterations")->capture_default_str();
    app->add_option("--inertia", inertia, "Inertia weight w")->capture_default_str();
    app->add_option("--c1", c1, "Cognitive coefficient")->capture_default_str();
    app->add_option("--c2", c2, "Social coefficient")->capture_default_str();
    app->add_option("--vmax", vmax, "Velocity clamp (default 0.5*(init-high - init-low))");
    app->add_option("--init-low", init_low, "Lower bound of initial positions")
        ->capture_default_str();
    app->add_option("--init-high", init_high, "Upper bound of initial positions")
        ->capture_default_str();
    app->add_option("--repulsion", repulsion, "Enable inter-particle repulsion with strength");
  }

  SwarmConfig config() const {
    SwarmConfig c;
    c.population = population;
    c.max_iterations = iterations;
    c.inertia_w = inertia;
    c.cognitive_c1 = c1;
    c.social_c2 = c2;
    c.init_low = init_low;
    c.init_high = init_high;
    c.vmax = vmax ? *vmax : 0.5 * (init_high - init_low);
    c.seed = seed;
    if (repulsion) {
      c.repulsion_enabled = true;
      c.repulsion_strength = *repulsion;
    }
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    return c;
  }
};

std::vector<double> parse_priorities(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto toks = detail::split_ws(tok);
    if (toks.size() != 1) throw InputError("malformed priority list '" + text + "'");
    auto v = detail::parse_number<double>(toks[0]);
    if (!v || !std::isfinite(*v))
      throw InputError("priority '" + std::string(toks[0]) + "' is not a finite number");
    out.push_back(*v);
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shortest paths and spanning trees, exact and by particle swarm"};
  app.name("swarmroute");
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a seeded random graph");
  std::string gen_kind = "erdos_renyi";
  std::size_t gen_n = 10, gen_rows = 0, gen_cols = 0;
  double gen_p = 0.4, gen_low = 1.0, gen_high = 10.0;
  std::uint64_t gen_seed = 0;
  bool gen_allow_disconnected = false;
  std::string gen_out;
  gen->add_option("--generator", gen_kind, "erdos_renyi | er | grid | complete")
      ->check(CLI::IsMember({"erdos_renyi", "er", "grid", "complete"}))
      ->capture_default_str();
  gen->add_option("--n", gen_n, "Node count (erdos_renyi, complete)")->capture_default_str();
  gen->add_option("--p", gen_p, "Edge probability (erdos_renyi)")->capture_default_str();
  gen->add_option("--rows", gen_rows, "Grid rows");
  gen->add_option("--cols", gen_cols, "Grid columns");
  gen->add_option("--weight-low", gen_low, "Lowest edge weight")->capture_default_str();
  gen->add_option("--weight-high", gen_high, "Edge weights are below this")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "Random seed (required)")->required();
  gen->add_flag("--allow-disconnected", gen_allow_disconnected,
                "Do not resample until connected");
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  // sp
  auto* sp = app.add_subcommand("sp", "Exact shortest path");
  std::string sp_graph;
  std::size_t sp_from = 0, sp_to = 0;
  sp->add_option("graph", sp_graph, "Graph file ('-' for stdin)")->required();
  sp->add_option("--from", sp_from, "Origin node (1-based)")->required();
  sp->add_option("--to", sp_to, "Destination node (1-based)")->required();

  // mst
  auto* mst = app.add_subcommand("mst", "Exact minimum spanning tree");
  std::string mst_graph, mst_algo = "prim";
  mst->add_option("graph", mst_graph, "Graph file ('-' for stdin)")->required();
  mst->add_option("--algo", mst_algo, "prim | kruskal")
      ->check(CLI::IsMember({"prim", "kruskal"}))
      ->capture_default_str();

  // pso
  auto* pso = app.add_subcommand("pso", "Shortest path by particle swarm");
  std::string pso_graph;
  std::size_t pso_from = 0, pso_to = 0;
  SwarmFlags pso_flags;
  std::optional<double> pso_jitter, pso_target;
  bool pso_timing = false;
  pso->add_option("graph", pso_graph, "Graph file ('-' for stdin)")->required();
  pso->add_option("--from", pso_from, "Origin node (1-based)")->required();
  pso->add_option("--to", pso_to, "Destination node (1-based)")->required();
  pso_flags.add_to(pso);
  pso->add_option("--jitter", pso_jitter, "Per-evaluation link-weight jitter amplitude");
  pso->add_option("--target", pso_target, "Stop once gbest fitness <= target");
  pso->add_flag("--timing", pso_timing, "Include wall_ms in the report");

  // decode
  auto* dec = app.add_subcommand("decode", "Decode a priority vector into a path");
  std::string dec_graph, dec_priorities;
  std::size_t dec_from = 0, dec_to = 0;
  dec->add_option("graph", dec_graph, "Graph file ('-' for stdin)")->required();
  dec->add_option("--priorities", dec_priorities, "Comma-separated priority per node")
      ->required();
  dec->add_option("--from", dec_from, "Origin node (1-based)")->required();
  dec->add_option("--to", dec_to, "Destination node (1-based)")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Benchmark the swarm against the exact solver");
  std::string bench_suite, bench_out;
  SwarmFlags bench_flags;
  std::size_t bench_repeats = 5, bench_jobs = 1;
  bool bench_timing = false;
  bench->add_option("suite", bench_suite, "Suite spec file ('-' for stdin)")->required();
  bench_flags.add_to(bench);
  bench->add_option("--repeats", bench_repeats, "Swarm runs per instance")
      ->capture_default_str();
  bench->add_option("--jobs", bench_jobs, "Worker threads")->capture_default_str();
  bench->add_flag("--timing", bench_timing, "Fill the exact_ms and pso_ms columns");
  bench->add_option("--out", bench_out, "Output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*gen) {
      InstanceSpec spec;
      if (gen_kind == "grid") {
        spec = InstanceSpec::grid(gen_rows, gen_cols, gen_seed, gen_low, gen_high);
      } else if (gen_kind == "complete") {
        spec = InstanceSpec::complete(gen_n, gen_seed, gen_low, gen_high);
      } else {
        spec = InstanceSpec::erdos_renyi(gen_n, gen_p, gen_seed, gen_low, gen_high);
      }
      spec.require_connected = !gen_allow_disconnected;
      auto g = [&] {
        try {
          return generate_instance(spec);
        } catch (const std::invalid_argument& e) {
          throw InputError(e.what());
        } catch (const std::runtime_error& e) {  // connectivity cap
          throw InputError(e.what());
        }
      }();
      std::string text = "# " + std::string(generator_name(spec.generator)) +
                         " seed=" + std::to_string(gen_seed) + "\n" + serialize_graph(g);
      write_output(text, gen_out, out);
      return kOk;
    }

    if (*sp) {
      WeightedGraph g = load_graph(sp_graph);
      PathResult r = shortest_path(g, to_node(g, sp_from, "--from"), to_node(g, sp_to, "--to"));
      if (!r.valid) {
        out << "unreachable\n";
        return kNoSolution;
      }
      out << join_nodes(r.nodes) << "\n" << "weight " << format_weight(r.total_weight) << "\n";
      return kOk;
    }

    if (*mst) {
      WeightedGraph g = load_graph(mst_graph);
      if (g.directed()) throw InputError("minimum spanning tree requires an undirected graph");
      if (!is_connected(g)) {
        out << "disconnected\n";
        return kNoSolution;
      }
      MstResult r = mst_algo == "kruskal" ? kruskal_mst(g) : prim_mst(g);
      for (const auto& e : r.edges)
        out << e.u + 1 << ' ' << e.v + 1 << ' ' << format_weight(e.weight) << "\n";
      out << "weight " << format_weight(r.total_weight) << "\n";
      return kOk;
    }

    if (*pso) {
      WeightedGraph g = load_graph(pso_graph);
      NodeId from = to_node(g, pso_from, "--from");
      NodeId to = to_node(g, pso_to, "--to");
      if (from == to) throw InputError("--from and --to must differ");
      SwarmConfig config = pso_flags.config();
      config.target_fitness = pso_target;
      std::optional<JitterConfig> jitter;
      if (pso_jitter) {
        if (!(*pso_jitter >= 0.0)) throw InputError("--jitter must be >= 0");
        jitter = JitterConfig{*pso_jitter};
      }
      RunReport report = solve(RoutingProblem(std::move(g), from, to), config, jitter);
      out << serialize_report(report, pso_timing);
      return report.best_path.valid ? kOk : kNoSolution;
    }

    if (*dec) {
      WeightedGraph g = load_graph(dec_graph);
      std::vector<double> priorities = parse_priorities(dec_priorities);
      if (priorities.size() != g.node_count())
        throw InputError("--priorities has " + std::to_string(priorities.size()) +
                         " values, graph has " + std::to_string(g.node_count()) + " nodes");
      DecodeResult r =
          decode(priorities, g, to_node(g, dec_from, "--from"), to_node(g, dec_to, "--to"));
      out << format_trace(r, priorities);
      return r.path.valid ? kOk : kNoSolution;
    }

    if (*bench) {
      std::vector<InstanceSpec> specs;
      try {
        if (bench_suite == "-") {
          specs = parse_suite(std::cin);
        } else {
          std::ifstream in(bench_suite);
          if (!in) throw InputError("cannot open suite file '" + bench_suite + "'");
          specs = parse_suite(in);
        }
      } catch (const ParseError& e) {
        throw InputError(bench_suite + ": " + e.what());
      }
      SuiteReport suite = run_suite(specs, bench_flags.config(), bench_repeats,
                                    {std::max<std::size_t>(1, bench_jobs), bench_timing});
      write_output(format_suite_csv(suite), bench_out, out);
      return kOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace swarmroute::cli
