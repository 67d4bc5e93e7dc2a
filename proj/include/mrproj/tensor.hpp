#pragma once

#include <functional>

#include "mrproj/proj1d.hpp"

namespace mrproj {

// d-dimensional working set: one projector context per axis, all sharing the
// same axis range and resolution (the box is the d-fold product of one 1-D
// range). Axis systems may differ.
struct TensorContext {
  std::vector<ProjectorContext> axes;
  DyadicGrid box;  // dim = d

  int dim() const { return box.dim; }
};

TensorContext make_tensor_context(const std::vector<ScalingSystem>& systems,
                                  const DyadicGrid& box);

// Tag for the 1-D operator lifted along one axis.
struct AxisOp {
  enum Kind { kProject, kDetail } kind = kProject;
  int kappa = 0;
};

// Per-axis sign choices sigma^j : {0..k_j} -> {-1,+1}. The lattice sign at a
// multi-index is the product of its axis entries; it is derived, never stored.
struct SignPattern {
  std::vector<std::vector<int>> axis_signs;

  int at(const MultiIndex& kappa) const;  // product sign, structural_error if short
};

// Applies the 1-D operator to every line of f parallel to `axis` (0-based).
SampledFunction apply_axis(const TensorContext& ctx, int axis, const AxisOp& op,
                           const SampledFunction& f);

// Anisotropic reproduction at multi-scale kappa: the axis lifts composed in
// ascending axis order. Axis order is mathematically irrelevant (the lifts
// commute) and fixed for bit determinism.
SampledFunction project_nd(const TensorContext& ctx, const SampledFunction& f,
                           const MultiIndex& kappa);

// Anisotropic detail at kappa. Production path: per-axis 1-D details
// composed in ascending axis order. With via_inclusion_exclusion = true the
// same operator is assembled as the alternating-sign sum of reproductions
// over corner offsets epsilon in {0,1}^d with epsilon_j = 0 wherever
// kappa_j = 0; the two paths are mutual cross-checks.
SampledFunction detail_nd(const TensorContext& ctx, const SampledFunction& f,
                          const MultiIndex& kappa, bool via_inclusion_exclusion = false);

// sum of detail_nd over the full lattice {0..k_1} x ... x {0..k_d}, in
// row-major order (last axis fastest); telescopes to project_nd(f, k).
SampledFunction partial_sum(const TensorContext& ctx, const SampledFunction& f,
                            const MultiIndex& k);

// Shared lattice driver: visits every kappa in {0..k} in row-major order
// (last axis fastest) and hands the factored detail to `fn`. Per-axis
// prefixes are cached, so consecutive kappa sharing leading components do not
// recompute them; values are identical to a fresh detail_nd call.
void for_each_detail(const TensorContext& ctx, const SampledFunction& f,
                     const MultiIndex& k,
                     const std::function<void(const MultiIndex&, const SampledFunction&)>& fn);

// Pointwise sum of |detail_nd|^2 over the whole lattice {0..k}. Same values,
// same per-sample accumulation order as folding for_each_detail, but the
// last-axis sweep keeps each gathered line hot across all its scales instead
// of materializing full-size details, which is several times faster on
// multi-dimensional boxes.
std::vector<double> detail_energy(const TensorContext& ctx, const SampledFunction& f,
                                  const MultiIndex& k);

}  // namespace mrproj
