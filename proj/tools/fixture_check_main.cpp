#include <iostream>

#include "fixtures.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: fixture_check <fixtures-dir>\n";
    return 1;
  }
  int failed = 0;
  for (const auto& r : swarmroute::cli::check_fixtures(argv[1])) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.passed) {
      std::cout << ": " << r.detail;
      ++failed;
    }
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
