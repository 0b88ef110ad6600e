#include <gtest/gtest.h>

#include "swarmroute/exact.hpp"
#include "swarmroute/router.hpp"
#include "test_support.hpp"

namespace swarmroute {
namespace {

using testing::fig21_graph;
using testing::kPriorityExample;
using testing::priority_example_graph;

TEST(RoutingProblemTest, Validation) {
  EXPECT_THROW(RoutingProblem(fig21_graph(), 0, 0), std::invalid_argument);
  EXPECT_THROW(RoutingProblem(fig21_graph(), 0, 9), GraphError);
  RoutingProblem p(fig21_graph(), 0, 4);
  EXPECT_EQ(p.penalty(), 9.0);
}

TEST(RouteFitnessTest, WorkedExampleWeighsFive) {
  RoutingProblem p(priority_example_graph(), 0, 5);
  EXPECT_EQ(route_fitness(kPriorityExample, p, p.penalty()), 5.0);
}

TEST(RouteFitnessTest, DeadEndScoresPenalty) {
  RoutingProblem p(build_graph(4, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}}), 0, 3);
  std::vector<double> pr{0, 0, 9, 1};
  EXPECT_EQ(route_fitness(pr, p, 123.0), 123.0);
  // Optional unreached-node term: one node (the destination) never reached.
  EXPECT_EQ(route_fitness(pr, p, 123.0, 2.0), 125.0);
}

TEST(RouteFitnessTest, DirectNeighbor) {
  RoutingProblem p(build_graph(3, {{0, 1, 2.5}, {0, 2, 1.0}, {2, 1, 1.0}}), 0, 1);
  std::vector<double> pr{0, 10, 0};
  EXPECT_EQ(route_fitness(pr, p, p.penalty()), 2.5);
}

TEST(RouteFitnessTest, PenaltySeparatesInvalidFromValid) {
  Rng rng(3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = testing::connect(testing::random_graph(seed, 9, 0.3), seed);
    RoutingProblem p(g, 0, 8);
    double worst_valid = 0, best_invalid = kInfinity;
    for (int k = 0; k < 300; ++k) {
      std::vector<double> pr(9);
      for (auto& x : pr) x = uniform01(rng);
      double f = route_fitness(pr, p, p.penalty());
      if (decode_path(pr, g, 0, 8).valid)
        worst_valid = std::max(worst_valid, f);
      else
        best_invalid = std::min(best_invalid, f);
    }
    EXPECT_LT(worst_valid, best_invalid);
  }
}

TEST(JitterTest, ZeroAmplitudeIsIdentity) {
  auto g = priority_example_graph();
  auto path = decode_path(kPriorityExample, g, 0, 5);
  Rng rng(1);
  auto overlay = apply_weight_jitter(g, path, {0.0}, rng);
  ASSERT_EQ(overlay.path_edges.size(), 5u);
  for (const auto& e : overlay.path_edges) EXPECT_EQ(e.weight, *g.edge_weight(e.u, e.v));
}

TEST(JitterTest, ReproducibleAndNonNegative) {
  auto g = testing::random_graph(5, 8, 1.0);
  std::vector<double> pr{0, 1, 2, 3, 4, 5, 6, 7};
  auto path = decode_path(pr, g, 0, 3);
  Rng a(17), b(17);
  auto oa = apply_weight_jitter(g, path, {0.5}, a);
  auto ob = apply_weight_jitter(g, path, {0.5}, b);
  EXPECT_EQ(oa.path_edges, ob.path_edges);
  for (const auto& e : oa.path_edges) {
    double base = *g.edge_weight(e.u, e.v);
    EXPECT_GE(e.weight, 0.5 * base);
    EXPECT_LE(e.weight, 1.5 * base);
  }
  Rng c(5);
  for (int k = 0; k < 200; ++k)
    for (const auto& e : apply_weight_jitter(g, path, {3.0}, c).path_edges)
      EXPECT_GE(e.weight, 0.0);
}

TEST(JitterTest, GraphUntouched) {
  auto g = fig21_graph();
  auto copy = g;
  Rng rng(0);
  apply_weight_jitter(g, decode_path(std::vector<double>(5, 1.0), g, 0, 4), {0.9}, rng);
  EXPECT_EQ(g, copy);
}

TEST(SolveTest, SingleEdgeSolvedAtInit) {
  RoutingProblem p(build_graph(2, {{0, 1, 4.0}}), 0, 1);
  SwarmConfig c;
  c.target_fitness = 4.0;
  auto r = solve(p, c);
  EXPECT_TRUE(r.best_path.valid);
  EXPECT_EQ(r.best_path.total_weight, 4.0);
  EXPECT_EQ(r.gbest_trace.front(), 4.0);
  EXPECT_EQ(r.iterations_run, 0u);
}

TEST(SolveTest, EarlyExitOnTarget) {
  RoutingProblem p(fig21_graph(), 0, 4);
  SwarmConfig c;
  c.seed = 1;
  c.target_fitness = 2.0;
  auto r = solve(p, c);
  EXPECT_LE(r.iterations_run, c.max_iterations);
  EXPECT_EQ(r.gbest_trace.back(), 2.0);
  EXPECT_EQ(r.gbest_trace.size(), r.iterations_run + 1);
}

TEST(SolveTest, RunsFullBudgetWithoutTarget) {
  RoutingProblem p(fig21_graph(), 0, 4);
  SwarmConfig c;
  c.max_iterations = 25;
  auto r = solve(p, c);
  EXPECT_EQ(r.iterations_run, 25u);
  EXPECT_EQ(r.gbest_trace.size(), 26u);
  EXPECT_EQ(r.evaluations, 20u * 26u);
}

TEST(SolveTest, Fig21FindsOptimumForMostSeeds) {
  RoutingProblem p(fig21_graph(), 0, 4);
  const double optimum = shortest_path(p.graph, 0, 4).total_weight;
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SwarmConfig c;
    c.max_iterations = 200;
    c.seed = seed;
    hits += solve(p, c).best_path.total_weight == optimum;
  }
  EXPECT_GE(hits, 45);
}

TEST(SolveTest, ReportInvariantsAndSoundness) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = testing::connect(testing::random_graph(seed, 10, 0.3), seed);
    RoutingProblem p(g, 0, 9);
    SwarmConfig c;
    c.max_iterations = 60;
    c.seed = seed;
    auto r = solve(p, c);
    for (std::size_t i = 1; i < r.gbest_trace.size(); ++i)
      EXPECT_LE(r.gbest_trace[i], r.gbest_trace[i - 1]);
    if (r.best_path.valid) {
      EXPECT_EQ(r.best_path.total_weight, r.gbest_trace.back());
      EXPECT_EQ(simple_path_weight(g, r.best_path.nodes), r.best_path.total_weight);
      EXPECT_GE(r.best_path.total_weight, shortest_path(g, 0, 9).total_weight);
    } else {
      EXPECT_EQ(r.gbest_trace.back(), p.penalty());
    }
    EXPECT_EQ(r, solve(p, c));
  }
}

TEST(SolveTest, NoInvalidDecodesOnCompleteGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RoutingProblem p(testing::random_graph(seed, 8, 1.0), 0, 7);
    SwarmConfig c;
    c.max_iterations = 30;
    c.seed = seed;
    EXPECT_EQ(solve(p, c).invalid_decode_count, 0u);
  }
}

TEST(SolveTest, JitterIsSeededAndSound) {
  auto g = testing::connect(testing::random_graph(12, 10, 0.4), 12);
  RoutingProblem p(g, 0, 9);
  SwarmConfig c;
  c.max_iterations = 50;
  c.seed = 12;
  auto a = solve(p, c, JitterConfig{0.3});
  auto b = solve(p, c, JitterConfig{0.3});
  EXPECT_EQ(a, b);
  EXPECT_NE(a.gbest_trace, solve(p, c).gbest_trace);
  ASSERT_TRUE(a.best_path.valid);
  EXPECT_EQ(simple_path_weight(g, a.best_path.nodes), a.best_path.total_weight);
  EXPECT_GE(a.best_path.total_weight, shortest_path(g, 0, 9).total_weight);
}

TEST(SolveTest, RepulsionVariantRuns) {
  RoutingProblem p(fig21_graph(), 0, 4);
  SwarmConfig c;
  c.repulsion_enabled = true;
  c.repulsion_strength = 0.01;
  c.max_iterations = 50;
  auto r = solve(p, c);
  EXPECT_TRUE(r.best_path.valid);
  EXPECT_EQ(r, solve(p, c));
}

TEST(SerializeReportTest, KeyValueLines) {
  RoutingProblem p(build_graph(2, {{0, 1, 4.0}}), 0, 1);
  SwarmConfig c;
  c.max_iterations = 2;
  c.seed = 9;
  auto text = serialize_report(solve(p, c));
  EXPECT_EQ(text,
            "valid=true\n"
            "path=1 2\n"
            "weight=4\n"
            "iterations_run=2\n"
            "evaluations=60\n"
            "invalid_decodes=0\n"
            "invalid_rate=0\n"
            "gbest_trace=4,4,4\n"
            "population=20\n"
            "max_iterations=2\n"
            "inertia_w=0.729\n"
            "cognitive_c1=1.49445\n"
            "social_c2=1.49445\n"
            "vmax=0.5\n"
            "init_low=0\n"
            "init_high=1\n"
            "seed=9\n"
            "repulsion_enabled=false\n"
            "repulsion_strength=0\n"
            "target_fitness=none\n"
            "jitter_amplitude=none\n");
  EXPECT_NE(serialize_report(solve(p, c), true).find("\nwall_ms="), std::string::npos);
}

}  // namespace
}  // namespace swarmroute
