#include <iostream>

#include "wallforge/acceptance.hpp"

int main() {
  const auto results = wallforge::acceptance::run_all();
  return wallforge::acceptance::print_results(results, std::cout);
}
