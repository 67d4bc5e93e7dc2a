#pragma once

#include "mrproj/grid.hpp"

namespace mrproj {

// Dyadic interval 2^-kappa * (nu + [0,1)), length exactly 2^-kappa.
// kappa may be negative: the stopping argument enlarges above the box when
// the level alpha is small relative to the average of |f|.
struct DyadicInterval {
  int kappa = 0;
  std::int64_t nu = 0;

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

// Level-alpha split f = good + sum_r bad_parts[r]. `selected` holds the
// pairwise disjoint stopping intervals, sorted by left endpoint; bad part r
// is (f - avg_r) restricted to interval r, where avg_r is the average of f
// over the full interval (f counted as 0 outside the box, so intervals may
// overhang the box). `good` is f off the union and avg_r on interval r.
struct CZDecomposition {
  double alpha = 0.0;
  std::vector<DyadicInterval> selected;
  SampledFunction good;
  std::vector<SampledFunction> bad_parts;
};

// Stopping-time selection: roots are the smallest dyadic intervals covering
// the negative and nonnegative parts of the box with |f|-average <= alpha
// (enlarged upward until true); recursive halving selects a child the first
// time its average strictly exceeds alpha, so every selected average lies in
// (alpha, 2 alpha]. Ties (average exactly alpha) do not select. Traversal is
// depth-first, left child first. Requires alpha > 0 and a 1-D f.
CZDecomposition cz_decompose(const SampledFunction& f, double alpha);

struct CzCheck {
  bool pass = false;
  double measured = 0.0;  // worst-case slack or bound value, see field docs
};

// Report-only verification of the five decomposition properties.
struct CzReport {
  CzCheck small_off_union;     // measured: max |f| - alpha off the union
  CzCheck total_length;        // measured: sum of lengths minus ||f||_1/alpha
  CzCheck averages_bracketed;  // measured: worst violation of (alpha, 2 alpha]
  CzCheck bad_parts_mean_zero; // measured: max |integral of a bad part|
  CzCheck good_bounded;        // measured: max |good| - 2 alpha

  bool pass() const {
    return small_off_union.pass && total_length.pass && averages_bracketed.pass &&
           bad_parts_mean_zero.pass && good_bounded.pass;
  }
};

CzReport verify_cz(const CZDecomposition& dec, const SampledFunction& f);

}  // namespace mrproj
