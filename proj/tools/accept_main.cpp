#include <iostream>
#include <string>

#include "exhom/acceptance.hpp"

// Runs the acceptance criteria and prints one line per criterion.
// An optional argument selects a single criterion by number.
int main(int argc, char** argv) {
  std::string selector = argc > 1 ? argv[1] : "all";
  try {
    std::vector<exhom::CriterionResult> rows = exhom::acceptance_suite(selector);
    bool all = true;
    for (const auto& r : rows) {
      all = all && r.pass;
      std::cout << "criterion " << r.number << ": " << (r.pass ? "PASS" : "FAIL") << " " << r.name
                << " (" << r.ms << " ms, budget " << r.budget_s << " s)";
      if (!r.detail.empty()) std::cout << " -- " << r.detail;
      std::cout << "\n";
    }
    std::cout << (all ? "all selected criteria passed" : "some criteria FAILED") << "\n";
    return all ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
