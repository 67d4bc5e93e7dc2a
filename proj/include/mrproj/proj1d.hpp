#pragma once

#include <map>

#include "mrproj/scaling.hpp"

namespace mrproj {

// One axis worth of projector machinery: the scaling pair embedded on the
// working box, and the finest admissible scale kappa_max = J - kAccuracyMargin.
struct ProjectorContext {
  ScalingSystem sys;
  DyadicGrid box;  // 1-D
  int kappa_max = 0;
  // Derived at construction: whether the stored samples carry imaginary
  // parts. Real systems take a cheaper arithmetic path with identical
  // results (the skipped products are exact zeros).
  bool phi_real = false;
  bool dual_real = false;
};

// Embeds sys onto box (structural_error if box cannot hold it or J differs).
ProjectorContext make_projector_context(const ScalingSystem& sys, const DyadicGrid& box);

// Scale-kappa analysis coefficients c_nu = 2^kappa <f, phi_dual(2^kappa . - nu)>
// for exactly those nu whose translate support meets f's support; every other
// coefficient is identically zero and not materialized. The translate support
// is the tight nonzero range, so translates truncated by the box edge are
// used as stored.
std::map<std::int64_t, Complex> coefficients(const ProjectorContext& ctx,
                                             const SampledFunction& f, int kappa);

// Known bound on where a function is nonzero, in absolute cells, half-open.
// Callers that already track support (the tensor line sweep does) pass it to
// skip the rescan; it must contain every nonzero sample.
struct SupportWindow {
  std::int64_t lo = 0, hi = 0;
};

// Scale-kappa reproduction sum_nu c_nu phi(2^kappa . - nu) on the box.
// Accumulated in ascending nu, then ascending cell, for bit determinism.
SampledFunction project(const ProjectorContext& ctx, const SampledFunction& f, int kappa);
SampledFunction project(const ProjectorContext& ctx, const SampledFunction& f, int kappa,
                        const SupportWindow& window);

// Difference of consecutive scales; the coarsest detail (kappa = 0) is the
// scale-0 reproduction itself.
SampledFunction detail(const ProjectorContext& ctx, const SampledFunction& f, int kappa);
SampledFunction detail(const ProjectorContext& ctx, const SampledFunction& f, int kappa,
                       const SupportWindow& window);

}  // namespace mrproj
