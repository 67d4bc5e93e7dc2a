#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mrproj {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;  // measured extremes, one line
};

// Runs the full battery in order, printing one "PASS|FAIL <n> <name> ..."
// line per criterion as it finishes. Returns all results; overall success
// is the conjunction.
std::vector<CriterionResult> run_acceptance(std::ostream& out);

}  // namespace mrproj
