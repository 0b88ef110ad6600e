#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace swarmroute::cli {
namespace {

const std::filesystem::path kGolden = SWARMROUTE_GOLDEN_DIR;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  std::string out, err;
};

// Bare file names are resolved inside the golden directory.
Outcome invoke(std::vector<std::string> args) {
  for (auto& a : args)
    if (a.ends_with(".txt") && a.find('/') == std::string::npos) a = (kGolden / a).string();
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

void expect_golden(const std::vector<std::string>& args, const std::string& golden,
                   int code = kOk) {
  auto r = invoke(args);
  EXPECT_EQ(r.code, code) << r.err;
  EXPECT_EQ(r.out, slurp(kGolden / golden));
}

TEST(CliGolden, Gen) {
  expect_golden({"gen", "--generator", "er", "--n", "6", "--p", "0.5", "--seed", "7"},
                "gen_er.txt");
  expect_golden({"gen", "--generator", "grid", "--rows", "2", "--cols", "3", "--seed", "3",
                 "--weight-low", "1", "--weight-high", "2"},
                "gen_grid.txt");
  expect_golden({"gen", "--generator", "complete", "--n", "4", "--seed", "5"},
                "gen_complete.txt");
}

TEST(CliGolden, ShortestPath) {
  expect_golden({"sp", "fig21.txt", "--from", "1", "--to", "4"}, "sp_fig21.txt");
  EXPECT_EQ(slurp(kGolden / "sp_fig21.txt"), "1 2 4\nweight 2\n");
}

TEST(CliGolden, MstAlgorithmsPrintTheSameWeight) {
  expect_golden({"mst", "fig21.txt", "--algo", "prim"}, "mst_fig21.txt");
  auto prim = invoke({"mst", "fig21.txt", "--algo", "prim"});
  auto kruskal = invoke({"mst", "fig21.txt", "--algo", "kruskal"});
  auto last_line = [](const std::string& s) {
    auto cut = s.rfind('\n', s.size() - 2);
    return s.substr(cut + 1);
  };
  EXPECT_EQ(last_line(prim.out), "weight 4\n");
  EXPECT_EQ(last_line(prim.out), last_line(kruskal.out));
}

TEST(CliGolden, Pso) {
  expect_golden({"pso", "fig21.txt", "--from", "1", "--to", "5", "--seed", "42", "--iterations",
                 "30"},
                "pso_fig21.txt");
  expect_golden({"pso", "priority.txt", "--from", "1", "--to", "6", "--seed", "3",
                 "--iterations", "20", "--jitter", "0.2", "--repulsion", "0.01"},
                "pso_priority_jitter.txt");
}

TEST(CliGolden, Decode) {
  expect_golden({"decode", "priority.txt", "--priorities", "2,6,4,9,5,7", "--from", "1", "--to",
                 "6"},
                "decode_priority.txt");
  expect_golden({"decode", "split.txt", "--priorities", "1,2,3,4,5,6,7", "--from", "1", "--to",
                 "4"},
                "decode_dead_end.txt", kNoSolution);
}

TEST(CliGolden, Bench) {
  std::vector<std::string> args{"bench", "small_suite.txt", "--seed", "1", "--repeats", "2",
                                "--iterations", "50"};
  expect_golden(args, "bench_small.csv");
  args.insert(args.end(), {"--jobs", "3"});
  expect_golden(args, "bench_small.csv");
}

TEST(CliExitCodes, NoSolution) {
  EXPECT_EQ(invoke({"sp", "split.txt", "--from", "1", "--to", "4"}).out, "unreachable\n");
  EXPECT_EQ(invoke({"sp", "split.txt", "--from", "1", "--to", "4"}).code, kNoSolution);
  auto mst = invoke({"mst", "split.txt"});
  EXPECT_EQ(mst.code, kNoSolution);
  EXPECT_EQ(mst.out, "disconnected\n");
  EXPECT_EQ(invoke({"pso", "split.txt", "--from", "1", "--to", "4", "--seed", "1",
                    "--iterations", "3"})
                .code,
            kNoSolution);
}

TEST(CliExitCodes, InputErrors) {
  const std::vector<std::vector<std::string>> bad{
      {},
      {"frobnicate"},
      {"sp", "fig21.txt", "--from", "1", "--to", "4", "--bogus"},
      {"sp", "fig21.txt", "--from", "1", "--to", "9"},
      {"sp", "fig21.txt", "--from", "0", "--to", "2"},
      {"sp", "/nonexistent/graph", "--from", "1", "--to", "2"},
      {"mst", "fig21.txt", "--algo", "boruvka"},
      {"pso", "fig21.txt", "--from", "1", "--to", "5"},
      {"pso", "fig21.txt", "--from", "1", "--to", "1", "--seed", "1"},
      {"pso", "fig21.txt", "--from", "1", "--to", "5", "--seed", "1", "--population", "0"},
      {"decode", "fig21.txt", "--priorities", "1,2", "--from", "1", "--to", "5"},
      {"decode", "fig21.txt", "--priorities", "1,x,3,4,5", "--from", "1", "--to", "5"},
      {"gen", "--generator", "er", "--n", "5"},
      {"gen", "--generator", "tree", "--n", "5", "--seed", "1"},
      {"gen", "--generator", "er", "--n", "30", "--p", "0.01", "--seed", "1"},
      {"bench", "fig21.txt", "--seed", "1"},
  };
  for (const auto& args : bad) {
    auto r = invoke(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(r.code, kInputError) << joined;
    EXPECT_FALSE(r.err.empty()) << joined;
  }
}

TEST(CliTest, ParseErrorNamesTheLine) {
  auto path = std::filesystem::temp_directory_path() / "swarmroute_bad_graph.txt";
  std::ofstream(path) << "p 3 2 u\n1 2 1\n2 3 -4\n";
  auto r = invoke({"sp", path.string(), "--from", "1", "--to", "3"});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(CliTest, GenOutputParsesBack) {
  auto gen = invoke({"gen", "--generator", "er", "--n", "9", "--p", "0.4", "--seed", "21"});
  ASSERT_EQ(gen.code, kOk);
  auto path = std::filesystem::temp_directory_path() / "swarmroute_gen_roundtrip.txt";
  std::ofstream(path) << gen.out;
  EXPECT_EQ(invoke({"sp", path.string(), "--from", "1", "--to", "9"}).code, kOk);
  auto out = std::filesystem::temp_directory_path() / "swarmroute_gen_out.txt";
  auto to_file = invoke(
      {"gen", "--generator", "er", "--n", "9", "--p", "0.4", "--seed", "21", "--out", out.string()});
  EXPECT_EQ(to_file.code, kOk);
  EXPECT_EQ(slurp(out), gen.out);
  std::filesystem::remove(path);
  std::filesystem::remove(out);
}

TEST(CliTest, SeededCommandsAreReproducible) {
  const std::vector<std::vector<std::string>> cmds{
      {"gen", "--generator", "er", "--n", "12", "--p", "0.3", "--seed", "99"},
      {"pso", "fig21.txt", "--from", "2", "--to", "5", "--seed", "8", "--jitter", "0.4"},
      {"bench", "small_suite.txt", "--seed", "4", "--repeats", "1", "--iterations", "20"},
  };
  for (const auto& c : cmds) EXPECT_EQ(invoke(c).out, invoke(c).out);
}

}  // namespace
}  // namespace swarmroute::cli
