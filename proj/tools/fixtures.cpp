#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace swarmroute::cli {
namespace {

bool read_file(const std::filesystem::path& p, std::string& out) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

std::string first_difference(const std::string& got, const std::string& want) {
  std::istringstream g(got), w(want);
  std::string gl, wl;
  for (std::size_t line = 1;; ++line) {
    bool has_g = static_cast<bool>(std::getline(g, gl));
    bool has_w = static_cast<bool>(std::getline(w, wl));
    if (!has_g && !has_w) return "outputs differ in trailing whitespace";
    if (!has_g || !has_w || gl != wl) {
      return "line " + std::to_string(line) + ": expected '" + (has_w ? wl : "<eof>") +
             "', got '" + (has_g ? gl : "<eof>") + "'";
    }
  }
}

}  // namespace

FixtureOutcome check_fixture(const std::filesystem::path& dir) {
  FixtureOutcome res;
  res.name = dir.filename().string();

  std::string cmd, expected, provenance;
  if (!read_file(dir / "cmd.txt", cmd)) {
    res.detail = "missing cmd.txt";
    return res;
  }
  if (!read_file(dir / "expected.txt", expected)) {
    res.detail = "missing expected.txt";
    return res;
  }
  if (!read_file(dir / "provenance.txt", provenance) ||
      provenance.find_first_not_of(" \t\r\n") == std::string::npos) {
    res.detail = "missing or empty provenance.txt";
    return res;
  }
  if (!std::filesystem::exists(dir / "graph.txt")) {
    res.detail = "missing graph.txt";
    return res;
  }

  std::vector<std::string> args;
  std::istringstream lines(cmd);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::istringstream toks(line);
    std::string tok;
    while (toks >> tok) args.push_back(tok == "graph.txt" ? (dir / "graph.txt").string() : tok);
  }

  std::ostringstream out, err;
  int code = run(args, out, err);
  if (code != kOk && code != kNoSolution) {
    res.detail = "exit status " + std::to_string(code) + ": " + err.str();
    return res;
  }
  if (out.str() != expected) {
    res.detail = first_difference(out.str(), expected);
    return res;
  }
  res.passed = true;
  return res;
}

std::vector<FixtureOutcome> check_fixtures(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(root))
    if (entry.is_directory()) dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());
  std::vector<FixtureOutcome> out;
  for (const auto& d : dirs) out.push_back(check_fixture(d));
  return out;
}

}  // namespace swarmroute::cli
