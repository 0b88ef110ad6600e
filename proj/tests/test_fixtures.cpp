#include <gtest/gtest.h>

#include <chrono>
#include <fstream>
#include <random>

#include "fixtures.hpp"

namespace swarmroute::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = SWARMROUTE_FIXTURE_DIR;

class ScratchDir {
 public:
  ScratchDir()
      : path_(fs::temp_directory_path() /
              ("swarmroute_fixtures_" + std::to_string(std::random_device{}()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

fs::path copy_fixture(const std::string& name, const ScratchDir& scratch) {
  auto dst = scratch.path() / name;
  fs::copy(kFixtures / name, dst, fs::copy_options::recursive);
  return dst;
}

TEST(FixtureCheck, AllCheckedInFixturesPassQuickly) {
  auto start = std::chrono::steady_clock::now();
  auto results = check_fixtures(kFixtures);
  auto elapsed = std::chrono::steady_clock::now() - start;
  ASSERT_GE(results.size(), 4u);
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
  EXPECT_LT(elapsed, std::chrono::seconds(10));
}

TEST(FixtureCheck, EveryProvenanceNamesItsSource) {
  for (const auto& entry : fs::directory_iterator(kFixtures)) {
    std::ifstream in(entry.path() / "provenance.txt");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    bool tagged = text.find("[PAPER]") != std::string::npos ||
                  text.find("[DERIVED]") != std::string::npos ||
                  text.find("[TRIVIAL]") != std::string::npos;
    bool cited = text.find("Fig") != std::string::npos || text.find("section") != std::string::npos;
    EXPECT_TRUE(tagged && cited) << entry.path().filename();
  }
}

TEST(FixtureCheck, CorruptedExpectationFails) {
  ScratchDir scratch;
  auto dir = copy_fixture("fig21_sp", scratch);
  std::ofstream(dir / "expected.txt") << "1 3 4\nweight 2\n";
  auto r = check_fixture(dir);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.name, "fig21_sp");
  EXPECT_NE(r.detail.find("line 1"), std::string::npos) << r.detail;
}

TEST(FixtureCheck, CorruptedGraphFails) {
  ScratchDir scratch;
  auto dir = copy_fixture("priority_decode", scratch);
  std::ofstream(dir / "graph.txt") << "p 6 6 u\n1 3 1\n2 3 1\n2 5 1\n4 5 1\n4 6 1\n3 6 1\n";
  EXPECT_FALSE(check_fixture(dir).passed);
}

TEST(FixtureCheck, MissingPiecesFail) {
  ScratchDir scratch;
  for (const char* piece : {"provenance.txt", "expected.txt", "cmd.txt", "graph.txt"}) {
    auto dir = copy_fixture("fig21_mst_prim", scratch);
    fs::remove(dir / piece);
    auto r = check_fixture(dir);
    EXPECT_FALSE(r.passed) << piece;
    EXPECT_NE(r.detail.find(piece), std::string::npos) << r.detail;
    fs::remove_all(dir);
  }
}

TEST(FixtureCheck, InputErrorFails) {
  ScratchDir scratch;
  auto dir = copy_fixture("fig21_sp", scratch);
  std::ofstream(dir / "cmd.txt") << "sp graph.txt --from 1 --to 42\n";
  auto r = check_fixture(dir);
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.detail.find("exit status 1"), std::string::npos) << r.detail;
}

TEST(FixtureCheck, OneBadFixtureDoesNotHideTheRest) {
  ScratchDir scratch;
  copy_fixture("fig21_sp", scratch);
  auto bad = copy_fixture("fig21_mst_kruskal", scratch);
  std::ofstream(bad / "expected.txt", std::ios::app) << "extra\n";
  auto results = check_fixtures(scratch.path());
  ASSERT_EQ(results.size(), 2u);
  EXPECT_FALSE(results[0].passed);  // fig21_mst_kruskal sorts first
  EXPECT_TRUE(results[1].passed);
}

}  // namespace
}  // namespace swarmroute::cli
