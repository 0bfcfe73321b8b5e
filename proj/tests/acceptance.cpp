#include <iostream>

#include "tetra/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& r : tetra::acceptance::run_all()) {
    std::cout << tetra::acceptance::render(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
