#pragma once

#include <string>
#include <vector>

#include "mrproj/rng.hpp"
#include "mrproj/tensor.hpp"

namespace mrproj {

// Widest primal support among the axis systems, in length units. A function
// kept this far from the box edges has every overlapping translate, at every
// admissible scale, fully inside the box: no projector mass is truncated.
double interior_margin(const TensorContext& ctx);

// Random test functions from a named family:
//   box          product of axis indicators with one random amplitude; edges
//                on the scale-`scale` dyadic lattice, so orthonormal systems
//                reproduce the result exactly at caps >= `scale`
//   steps        piecewise constant on a random coarse dyadic block partition
//   bumps        a few separable Gaussians centered away from the edges
//   spikes       one tall narrow column, height 2^m over a 2^-m-wide cell box
//   bandlimited  sums of separable products of scale-`scale` translates of
//                the axis scaling functions, interior_margin away from the
//                edges; reproduction at `scale` is lossless up to quadrature
// `scale` is used by box and bandlimited only. Unknown names raise
// structural_error; output is deterministic in the rng state.
std::vector<SampledFunction> make_corpus(const TensorContext& ctx,
                                         const std::string& generator, int count,
                                         int scale, XorShift64Star& rng);

// The exact spike 2^{m d} on the cell box [0, 2^-m)^d, zero elsewhere
// (unit L_1 mass). Requires m <= J and the box to contain [0, 2^-m)^d.
SampledFunction unit_spike(const DyadicGrid& box, int m);

}  // namespace mrproj
