#include <iostream>

#include "mrproj/acceptance.hpp"

// Runs the fixed acceptance battery and reports one line per criterion.
// Exit status is the number of failing criteria (0 = all green).
int main() {
  const auto results = mrproj::run_acceptance(std::cout);
  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  std::cout << results.size() - static_cast<std::size_t>(failures) << "/"
            << results.size() << " criteria passed" << std::endl;
  return failures;
}
