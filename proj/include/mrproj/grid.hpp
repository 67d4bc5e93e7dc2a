#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mrproj/errors.hpp"

namespace mrproj {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;  // scale index, one nonnegative entry per axis

// Dilation by 2^kappa reads every 2^kappa-th sample; keep at least
// 2^kAccuracyMargin samples per unit of support, so kappa <= J - kAccuracyMargin.
inline constexpr int kAccuracyMargin = 4;

// Uniform dyadic grid. Step is exactly 2^-J; every axis spans
// [lo * 2^-J, hi * 2^-J) and is split into hi - lo cells. Values live at cell
// midpoints. J <= 52 keeps the step and all midpoints exactly representable.
struct DyadicGrid {
  int J = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 1;
  int dim = 1;

  double step() const;                    // 2^-J
  std::int64_t extent() const { return hi - lo; }  // cells per axis
  std::int64_t cells() const;             // extent()^dim
  double cell_measure() const;            // (2^-J)^dim
  DyadicGrid axis() const { return {J, lo, hi, 1}; }

  friend bool operator==(const DyadicGrid&, const DyadicGrid&) = default;
};

// Throws structural_error unless J in [0, 52], hi > lo, dim >= 1.
void validate_grid(const DyadicGrid& g);

// Complex samples at the cell midpoints of a dyadic grid, flat layout with
// axis 0 fastest: flat = i_0 + n*(i_1 + n*(i_2 + ...)), n = extent().
// The function is identically zero outside the grid box.
struct SampledFunction {
  DyadicGrid grid;
  std::vector<Complex> samples;

  int dim() const { return grid.dim; }
  static SampledFunction zeros(const DyadicGrid& g);
};

// Midpoint-rule pairing sum f_i * conj(g_i) * cell_measure. The grids must be
// identical; there is no resampling.
Complex inner_product(const SampledFunction& f, const SampledFunction& g);

// Midpoint-rule (sum |f_i|^p * cell_measure)^(1/p); the p = infinity sentinel
// gives max |f_i|. p < 1 is rejected.
double lp_norm(const SampledFunction& f, double p);

// Sup of |f_i| over the grid; equal to lp_norm(f, infinity).
double sup_norm(const SampledFunction& f);

// Samples of x -> phi(2^kappa x - nu) on the target grid by exact stride
// lookup: output cell at absolute fine index m takes phi's sample at fine
// index 2^kappa * m - nu * 2^J, or 0 outside phi's box. No interpolation.
// phi and target must share J; requires 0 <= kappa <= J - kAccuracyMargin.
SampledFunction dilate_translate(const SampledFunction& phi, int kappa,
                                 std::int64_t nu, const DyadicGrid& target);

// Tight support of a 1-D function in absolute fine indices: smallest [a, b)
// containing every nonzero sample. Returns false (and a = b = 0) if f == 0.
bool support_bounds(const SampledFunction& f, std::int64_t& a, std::int64_t& b);

// Copy onto a wider axis range [lo, hi) at the same J (zero padding, exact).
// Throws structural_error if the new range does not contain the old one.
SampledFunction embedded(const SampledFunction& f, std::int64_t lo, std::int64_t hi);

// acc += w * x, samplewise, on identical grids.
void accumulate(SampledFunction& acc, const SampledFunction& x, Complex w);

// Plain-text serialization: header line "J lo hi d", then one sample per line
// as "real imag" with round-trippable precision, flat order.
void write_function(std::ostream& os, const SampledFunction& f);
void write_function_file(const std::string& path, const SampledFunction& f);
SampledFunction read_function(std::istream& is);
SampledFunction read_function_file(const std::string& path);

}  // namespace mrproj
