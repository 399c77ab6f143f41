// Runs every acceptance criterion and prints one line per criterion.
// Usage: tailpath_acceptance [suite ...]

#include <iostream>
#include <string>
#include <vector>

#include "tailpath/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    const auto id = tailpath::criterion_for_suite(argv[i]);
    if (!id) {
      std::cerr << "unknown suite: " << argv[i] << '\n';
      return 2;
    }
    ids.push_back(*id);
  }
  if (ids.empty()) {
    for (std::size_t i = 0; i < tailpath::acceptance_suites().size(); ++i) {
      ids.push_back(static_cast<int>(i) + 1);
    }
  }
  int failed = 0;
  double total = 0.0;
  for (int id : ids) {
    const tailpath::CriterionResult r = tailpath::run_criterion(id);
    std::cout << tailpath::format_result(r) << std::endl;
    failed += r.passed ? 0 : 1;
    total += r.seconds;
  }
  std::cout << (failed == 0 ? "all " : "") << ids.size() - failed << '/' << ids.size()
            << " criteria passed in " << total << " s" << std::endl;
  return failed == 0 ? 0 : 1;
}
