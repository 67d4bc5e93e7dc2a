#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrproj/grid.hpp"

namespace mrproj {

// Flat key = value experiment description. List-valued keys (system, p,
// corpus, alpha) repeat, one value per line; scalar keys appear at most once.
// '#' starts a comment, blank lines are skipped.
//
// Keys:
//   system   scaling spec per axis ("haar", "dbN", "file:PATH"); one entry
//            broadcasts to all axes      [default haar]
//   dim      spatial dimension, 1..3     [default 1]
//   J        grid resolution exponent    [required]
//   box_lo   working box lower edge, dyadic rational ("-3", "1.5", "-7/8")
//   box_hi   working box upper edge      [both required, hi > lo]
//   k_cap    comma-separated per-axis scale caps  [default J-4 on every axis]
//   p        Lebesgue exponent list      [default 2]
//   corpus   generator list: box | steps | bumps | spikes | bandlimited
//                                        [default box]
//   corpus_count  functions per generator [default 8]
//   trials   randomized trial count      [default 100]
//   seed     RNG stream seed             [default 1]
//   alpha    level list for czd / weak11 [default empty: subcommand decides]
//   free_signs  0/1, per-lattice-point signs in sign sweeps [default 0]
//   out_dir  report directory            [default "out"]
struct ExperimentConfig {
  std::vector<std::string> systems{"haar"};
  int dim = 1;
  int J = -1;
  double box_lo = 0.0;
  double box_hi = 0.0;
  MultiIndex k_cap;
  std::vector<double> p_list{2.0};
  std::vector<std::string> corpus{"box"};
  int corpus_count = 8;
  int trials = 100;
  std::uint64_t seed = 1;
  std::vector<double> alphas;
  bool free_signs = false;
  std::string out_dir = "out";
};

// Parses and validates; malformed lines, unknown or repeated scalar keys,
// and invariant violations (kappa cap above J minus the accuracy margin,
// p outside (1, inf), box edge not on the 2^-J lattice) all raise
// config_parse_error carrying the offending line number.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config(const std::string& path);

// Exact dyadic-rational reader for box edges: integers, binary-terminating
// decimals, and a/b with b a power of two. Returns false on anything else.
bool parse_dyadic(const std::string& s, double& out);

}  // namespace mrproj
