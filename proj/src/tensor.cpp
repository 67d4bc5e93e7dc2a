#include "mrproj/tensor.hpp"

#include <algorithm>
#include <array>

#include "mrproj/errors.hpp"

namespace mrproj {
namespace {

void check_domain(const TensorContext& ctx, const SampledFunction& f) {
  if (f.grid != ctx.box) throw structural_error("function must live on the context box");
}

void check_multi_index(const TensorContext& ctx, const MultiIndex& kappa) {
  if (static_cast<int>(kappa.size()) != ctx.dim())
    throw structural_error("multi-index arity does not match the context dimension");
  for (int j = 0; j < ctx.dim(); ++j)
    if (kappa[static_cast<std::size_t>(j)] < 0 ||
        kappa[static_cast<std::size_t>(j)] > ctx.axes[static_cast<std::size_t>(j)].kappa_max)
      throw resolution_error("scale index out of range on axis " + std::to_string(j));
}

SampledFunction apply_1d(const ProjectorContext& axis, const AxisOp& op,
                         const SampledFunction& line, const SupportWindow& w) {
  return op.kind == AxisOp::kProject ? project(axis, line, op.kappa, w)
                                     : detail(axis, line, op.kappa, w);
}

}  // namespace

TensorContext make_tensor_context(const std::vector<ScalingSystem>& systems,
                                  const DyadicGrid& box) {
  validate_grid(box);
  if (box.dim > 3) throw structural_error("dimension is capped at 3");
  if (systems.size() != static_cast<std::size_t>(box.dim))
    throw structural_error("one scaling system per axis required");
  TensorContext ctx;
  ctx.box = box;
  for (const ScalingSystem& sys : systems)
    ctx.axes.push_back(make_projector_context(sys, box.axis()));
  return ctx;
}

int SignPattern::at(const MultiIndex& kappa) const {
  if (kappa.size() > axis_signs.size())
    throw structural_error("sign pattern has fewer axes than the multi-index");
  int s = 1;
  for (std::size_t j = 0; j < kappa.size(); ++j) {
    const auto& axis = axis_signs[j];
    const int kj = kappa[j];
    if (kj < 0 || static_cast<std::size_t>(kj) >= axis.size())
      throw structural_error("sign pattern shorter than the requested scale range");
    s *= axis[static_cast<std::size_t>(kj)];
  }
  return s;
}

SampledFunction apply_axis(const TensorContext& ctx, int axis, const AxisOp& op,
                           const SampledFunction& f) {
  check_domain(ctx, f);
  if (axis < 0 || axis >= ctx.dim()) throw structural_error("axis index out of range");
  const ProjectorContext& pc = ctx.axes[static_cast<std::size_t>(axis)];
  const std::int64_t n = ctx.box.extent();
  std::int64_t stride = 1;
  for (int a = 0; a < axis; ++a) stride *= n;
  const std::int64_t block = stride * n;
  const std::int64_t total = ctx.box.cells();

  SampledFunction out = SampledFunction::zeros(ctx.box);
  const std::int64_t cell0 = ctx.box.lo;  // axis grids share the box range
  if (stride == 1) {
    SampledFunction line = SampledFunction::zeros(ctx.box.axis());
    for (std::int64_t base = 0; base < total; base += n) {
      std::int64_t lo = n, hi = 0;
      for (std::int64_t i = 0; i < n; ++i) {
        const Complex v = f.samples[static_cast<std::size_t>(base + i)];
        line.samples[static_cast<std::size_t>(i)] = v;
        if (v != 0.0) {
          lo = std::min(lo, i);
          hi = i + 1;
        }
      }
      if (lo >= hi) continue;  // operator is linear: zero lines map to zero
      const SampledFunction mapped =
          apply_1d(pc, op, line, SupportWindow{cell0 + lo, cell0 + hi});
      std::copy(mapped.samples.begin(), mapped.samples.end(),
                out.samples.begin() + static_cast<std::ptrdiff_t>(base));
    }
    return out;
  }

  // Lines along a non-contiguous axis sit 8*stride bytes apart in memory, so
  // a line-at-a-time walk misses cache on every sample. Adjacent inner
  // offsets are adjacent in memory; gathering a tile of them per pass reads
  // and writes whole cache lines.
  constexpr std::int64_t kTileLines = 32;
  std::vector<SampledFunction> lines;
  for (std::int64_t j = 0; j < kTileLines; ++j)
    lines.push_back(SampledFunction::zeros(ctx.box.axis()));
  std::vector<SampledFunction> mapped(static_cast<std::size_t>(kTileLines));
  std::array<std::int64_t, kTileLines> lo{};
  std::array<std::int64_t, kTileLines> hi{};
  for (std::int64_t base_outer = 0; base_outer < total; base_outer += block) {
    for (std::int64_t inner0 = 0; inner0 < stride; inner0 += kTileLines) {
      const std::int64_t m = std::min(kTileLines, stride - inner0);
      lo.fill(n);
      hi.fill(0);
      for (std::int64_t i = 0; i < n; ++i) {
        const Complex* src =
            f.samples.data() + static_cast<std::size_t>(base_outer + inner0 + i * stride);
        for (std::int64_t j = 0; j < m; ++j) {
          const Complex v = src[j];
          lines[static_cast<std::size_t>(j)].samples[static_cast<std::size_t>(i)] = v;
          if (v != 0.0) {
            lo[static_cast<std::size_t>(j)] = std::min(lo[static_cast<std::size_t>(j)], i);
            hi[static_cast<std::size_t>(j)] = i + 1;
          }
        }
      }
      for (std::int64_t j = 0; j < m; ++j) {
        const std::size_t js = static_cast<std::size_t>(j);
        mapped[js] = lo[js] < hi[js]
                         ? apply_1d(pc, op, lines[js],
                                    SupportWindow{cell0 + lo[js], cell0 + hi[js]})
                         : SampledFunction{};
      }
      for (std::int64_t i = 0; i < n; ++i) {
        Complex* dst =
            out.samples.data() + static_cast<std::size_t>(base_outer + inner0 + i * stride);
        for (std::int64_t j = 0; j < m; ++j)
          if (lo[static_cast<std::size_t>(j)] < hi[static_cast<std::size_t>(j)])
            dst[j] = mapped[static_cast<std::size_t>(j)].samples[static_cast<std::size_t>(i)];
      }
    }
  }
  return out;
}

SampledFunction project_nd(const TensorContext& ctx, const SampledFunction& f,
                           const MultiIndex& kappa) {
  check_multi_index(ctx, kappa);
  SampledFunction cur = f;
  for (int a = 0; a < ctx.dim(); ++a)
    cur = apply_axis(ctx, a, {AxisOp::kProject, kappa[static_cast<std::size_t>(a)]}, cur);
  return cur;
}

SampledFunction detail_nd(const TensorContext& ctx, const SampledFunction& f,
                          const MultiIndex& kappa, bool via_inclusion_exclusion) {
  check_multi_index(ctx, kappa);
  if (!via_inclusion_exclusion) {
    SampledFunction cur = f;
    for (int a = 0; a < ctx.dim(); ++a)
      cur = apply_axis(ctx, a, {AxisOp::kDetail, kappa[static_cast<std::size_t>(a)]}, cur);
    return cur;
  }
  // Alternating sum of plain reproductions over corner offsets; offsets are
  // only taken on axes with kappa_j > 0 (the others contribute no lower term).
  const int d = ctx.dim();
  SampledFunction acc = SampledFunction::zeros(ctx.box);
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    MultiIndex shifted = kappa;
    int parity = 0;
    bool admissible = true;
    for (int a = 0; a < d && admissible; ++a) {
      if (!(mask & (1u << a))) continue;
      if (kappa[static_cast<std::size_t>(a)] == 0) {
        admissible = false;
        break;
      }
      shifted[static_cast<std::size_t>(a)] -= 1;
      parity ^= 1;
    }
    if (!admissible) continue;
    accumulate(acc, project_nd(ctx, f, shifted), parity ? -1.0 : 1.0);
  }
  return acc;
}

void for_each_detail(const TensorContext& ctx, const SampledFunction& f,
                     const MultiIndex& k,
                     const std::function<void(const MultiIndex&, const SampledFunction&)>& fn) {
  check_multi_index(ctx, k);
  check_domain(ctx, f);
  const int d = ctx.dim();
  MultiIndex kappa(static_cast<std::size_t>(d), 0);
  // cache[a] = f after the first a axis details; recompute from the first
  // changed axis only. Values match a fresh detail_nd call bitwise because
  // the composition order and code path are identical.
  std::vector<SampledFunction> cache(static_cast<std::size_t>(d) + 1);
  cache[0] = f;
  const auto refresh = [&](int from) {
    for (int a = from; a < d; ++a) {
      cache[static_cast<std::size_t>(a) + 1] = SampledFunction{};  // release before rebuild
      cache[static_cast<std::size_t>(a) + 1] = apply_axis(
          ctx, a, {AxisOp::kDetail, kappa[static_cast<std::size_t>(a)]}, cache[static_cast<std::size_t>(a)]);
    }
  };
  refresh(0);
  for (;;) {
    fn(kappa, cache[static_cast<std::size_t>(d)]);
    int axis = d - 1;
    while (axis >= 0 &&
           kappa[static_cast<std::size_t>(axis)] == k[static_cast<std::size_t>(axis)])
      --axis;
    if (axis < 0) break;
    kappa[static_cast<std::size_t>(axis)] += 1;
    for (int a = axis + 1; a < d; ++a) kappa[static_cast<std::size_t>(a)] = 0;
    refresh(axis);
  }
}

SampledFunction partial_sum(const TensorContext& ctx, const SampledFunction& f,
                            const MultiIndex& k) {
  SampledFunction acc = SampledFunction::zeros(ctx.box);
  for_each_detail(ctx, f, k, [&acc](const MultiIndex&, const SampledFunction& det) {
    accumulate(acc, det, 1.0);
  });
  return acc;
}

namespace {

// Adds |detail at every scale 0..kmax|^2 of each last-axis line of g into
// energy. One tile gather serves all scales of its lines, so the full-size
// array is read once per call rather than once per scale.
void last_axis_energy(const TensorContext& ctx, const SampledFunction& g, int kmax,
                      std::vector<double>& energy) {
  const ProjectorContext& pc = ctx.axes.back();
  const std::int64_t n = ctx.box.extent();
  std::int64_t stride = 1;
  for (int a = 0; a + 1 < ctx.dim(); ++a) stride *= n;
  const std::int64_t cell0 = ctx.box.lo;
  constexpr std::int64_t kTileLines = 32;
  std::vector<SampledFunction> lines;
  for (std::int64_t j = 0; j < kTileLines; ++j)
    lines.push_back(SampledFunction::zeros(ctx.box.axis()));
  std::vector<double> local(static_cast<std::size_t>(kTileLines * n));
  std::array<std::int64_t, kTileLines> lo{};
  std::array<std::int64_t, kTileLines> hi{};
  for (std::int64_t inner0 = 0; inner0 < stride; inner0 += kTileLines) {
    const std::int64_t m = std::min(kTileLines, stride - inner0);
    lo.fill(n);
    hi.fill(0);
    for (std::int64_t i = 0; i < n; ++i) {
      const Complex* src = g.samples.data() + static_cast<std::size_t>(inner0 + i * stride);
      const double* run = energy.data() + static_cast<std::size_t>(inner0 + i * stride);
      for (std::int64_t j = 0; j < m; ++j) {
        const Complex v = src[j];
        lines[static_cast<std::size_t>(j)].samples[static_cast<std::size_t>(i)] = v;
        // carry the running totals through the tile so the accumulation
        // sequence per sample is exactly the lattice fold's
        local[static_cast<std::size_t>(j * n + i)] = run[j];
        if (v != 0.0) {
          lo[static_cast<std::size_t>(j)] = std::min(lo[static_cast<std::size_t>(j)], i);
          hi[static_cast<std::size_t>(j)] = i + 1;
        }
      }
    }
    for (std::int64_t j = 0; j < m; ++j) {
      const std::size_t js = static_cast<std::size_t>(j);
      if (lo[js] >= hi[js]) continue;  // zero line: every detail is zero
      const SupportWindow w{cell0 + lo[js], cell0 + hi[js]};
      double* lj = local.data() + static_cast<std::size_t>(j * n);
      for (int kappa = 0; kappa <= kmax; ++kappa) {
        const SampledFunction det = detail(pc, lines[js], kappa, w);
        for (std::int64_t i = 0; i < n; ++i)
          lj[i] += std::norm(det.samples[static_cast<std::size_t>(i)]);
      }
    }
    for (std::int64_t i = 0; i < n; ++i) {
      double* dst = energy.data() + static_cast<std::size_t>(inner0 + i * stride);
      for (std::int64_t j = 0; j < m; ++j)
        dst[j] = local[static_cast<std::size_t>(j * n + i)];
    }
  }
}

}  // namespace

std::vector<double> detail_energy(const TensorContext& ctx, const SampledFunction& f,
                                  const MultiIndex& k) {
  check_multi_index(ctx, k);
  check_domain(ctx, f);
  const int d = ctx.dim();
  std::vector<double> energy(f.samples.size(), 0.0);
  if (d == 1) {
    last_axis_energy(ctx, f, k[0], energy);
    return energy;
  }
  // Outer axes run the same cached row-major odometer as for_each_detail;
  // per-sample addition order over the lattice is identical, so the result
  // matches the callback fold bitwise.
  MultiIndex kappa(static_cast<std::size_t>(d), 0);
  std::vector<SampledFunction> cache(static_cast<std::size_t>(d));
  cache[0] = f;
  const auto refresh = [&](int from) {
    for (int a = from; a + 1 < d; ++a) {
      cache[static_cast<std::size_t>(a) + 1] = SampledFunction{};  // release before rebuild
      cache[static_cast<std::size_t>(a) + 1] = apply_axis(
          ctx, a, {AxisOp::kDetail, kappa[static_cast<std::size_t>(a)]},
          cache[static_cast<std::size_t>(a)]);
    }
  };
  refresh(0);
  for (;;) {
    last_axis_energy(ctx, cache[static_cast<std::size_t>(d) - 1],
                     k[static_cast<std::size_t>(d) - 1], energy);
    int axis = d - 2;
    while (axis >= 0 &&
           kappa[static_cast<std::size_t>(axis)] == k[static_cast<std::size_t>(axis)])
      --axis;
    if (axis < 0) break;
    kappa[static_cast<std::size_t>(axis)] += 1;
    for (int a = axis + 1; a <= d - 2; ++a) kappa[static_cast<std::size_t>(a)] = 0;
    refresh(axis);
  }
  return energy;
}

}  // namespace mrproj
