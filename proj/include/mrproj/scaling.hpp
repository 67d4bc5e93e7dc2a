#pragma once

#include <iosfwd>
#include <string>

#include "mrproj/grid.hpp"

namespace mrproj {

// Numerical health report for a scaling pair, evaluated on its finite box.
// Report-only: construction never fails because of these numbers. All box
// integrals are finite by truncation, so the flags state consistency on the
// box, not integrability over the whole line; `note` records that caveat.
struct ConditionReport {
  bool majorant_ok = false;        // |phi| dominated by its averaged radial envelope
  double majorant_residual = 0.0;  // max positive excess of |phi| over the bound
  double tail_moment_phi = 0.0;    // int_0^inf tau * int_{|y|>=tau} Phi(y) dy dtau
  bool derivative_majorant_ok = false;  // same bound for the dual's difference quotient
  double tail_moment_dual_deriv = 0.0;  // tail moment of the derivative envelope
  bool dual_majorant_ok = false;        // envelope bound for |phi_dual|
  bool dual_tail_ok = false;            // int_1^inf of the dual tail mass is finite
  double mu_log_moment = 0.0;  // int_0^inf mu(x) ln(1+x) dx, mu = shared envelope
  std::string note;

  bool valid() const {
    return majorant_ok && derivative_majorant_ok && dual_majorant_ok && dual_tail_ok;
  }
};

// A scaling function and its dual on one shared 1-D grid. Orthonormal systems
// have phi_dual sample-identical to phi. Arbitrary biorthogonal pairs enter
// via files only; they are never computed here.
struct ScalingSystem {
  SampledFunction phi;
  SampledFunction phi_dual;
  bool orthonormal = false;
  ConditionReport condition_report;
};

// The unit indicator chi_[0,1) as both phi and phi_dual, sampled on `box`
// (which must contain [0,1) and share resolution J).
ScalingSystem haar_system(int J, const DyadicGrid& box);

// Orthonormal Daubechies family of order N (2N filter taps, support
// [0, 2N-1]), built by dyadic refinement of the shipped filter table:
// exact values at integers from the eigenvector of the two-scale transfer
// matrix, then level-by-level refinement down to the midpoint lattice.
// Samples are exact pointwise values of phi up to rounding; the midpoint-rule
// integral of phi is 1 by partition of unity. Running more than J + 1
// cascade levels cannot change the returned samples, so cascade_iters only
// gates the precondition cascade_iters >= J. N = 1 reproduces haar_system's
// samples on the box [0, 1). Orders 1..10 are shipped.
ScalingSystem daubechies_system(int N, int J, int cascade_iters);

// Shipped refinement filter, sum = sqrt(2), 2N entries. Throws
// unsupported_order_error outside 1..10.
const double* daubechies_filter(int N, int& length);

// max over shifts nu, mu in [-range, range] of
// |<phi(.-nu), phi_dual(.-mu)> - delta_{nu,mu}| by midpoint quadrature.
// Throws structural_error if a shifted support leaves the box.
double biorthogonality_defect(const ScalingSystem& sys, int shift_range);

// Builds the canonical majorant (the radially decreasing envelope of |phi|,
// widened by 1/2 so the unit-cell average dominates pointwise values) and
// evaluates every tail moment over the box. Deterministic, never throws.
ConditionReport validate_conditions(const ScalingSystem& sys);

// Both functions re-embedded on the axis range [lo, hi), same J.
ScalingSystem embedded(const ScalingSystem& sys, std::int64_t lo, std::int64_t hi);

// File format: two serialized function blocks, phi then phi_dual, same grid.
void write_scaling_system(std::ostream& os, const ScalingSystem& sys);
ScalingSystem read_scaling_system(std::istream& is);

// Resolve a CLI-style spec: "haar", "dbN" (N = 1..10), or "file:PATH".
// `box` is the target axis range; generated systems are embedded onto it.
ScalingSystem make_scaling_system(const std::string& spec, const DyadicGrid& box);

}  // namespace mrproj
