#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace swarmroute::cli {

struct FixtureOutcome {
  std::string name;
  bool passed = false;
  std::string detail;  // first differing line or the failure reason
};

/// Runs one fixture directory holding graph.txt, cmd.txt, expected.txt and
/// provenance.txt. cmd.txt is a single argument line; the token `graph.txt`
/// is resolved inside the fixture directory. The run passes when stdout
/// equals expected.txt and the exit status is 0 or 2.
FixtureOutcome check_fixture(const std::filesystem::path& dir);

/// check_fixture for every subdirectory of `root`, in name order.
std::vector<FixtureOutcome> check_fixtures(const std::filesystem::path& root);

}  // namespace swarmroute::cli
