#pragma once

#include <stdexcept>
#include <string>

namespace mrproj {

// Structural misuse: incompatible grids, boxes that do not contain required
// supports, sign patterns shorter than the requested scale range.
struct structural_error : std::invalid_argument {
  explicit structural_error(const std::string& what) : std::invalid_argument(what) {}
};

// Scale index too fine for the grid: fewer than 2^accuracy_margin samples
// would survive the dilation stride.
struct resolution_error : std::invalid_argument {
  explicit resolution_error(const std::string& what) : std::invalid_argument(what) {}
};

// Daubechies order outside the shipped filter table.
struct unsupported_order_error : std::invalid_argument {
  explicit unsupported_order_error(const std::string& what) : std::invalid_argument(what) {}
};

// Exponent outside the range where the norm-equivalence statement holds
// (square-function ratios require 1 < p < infinity).
struct exponent_range_error : std::domain_error {
  explicit exponent_range_error(const std::string& what) : std::domain_error(what) {}
};

// Config file rejected; carries the offending 1-based line number (0 = whole file).
struct config_parse_error : std::runtime_error {
  int line;
  config_parse_error(int line_, const std::string& what)
      : std::runtime_error("config line " + std::to_string(line_) + ": " + what), line(line_) {}
};

}  // namespace mrproj
