#include "mrproj/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "mrproj/errors.hpp"

namespace mrproj {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

double signed_amp(XorShift64Star& rng) {  // magnitude in [0.25, 1], never tiny
  return rng.sign() * (0.25 + 0.75 * rng.uniform01());
}

// Runs fn(cell) over every flat cell index with the per-axis indices
// maintained alongside (axis 0 fastest, matching the sample layout).
template <typename Fn>
void for_each_cell(const DyadicGrid& g, Fn&& fn) {
  const std::int64_t n = g.extent();
  std::vector<std::int64_t> idx(static_cast<std::size_t>(g.dim), 0);
  const std::int64_t total = g.cells();
  for (std::int64_t flat = 0; flat < total; ++flat) {
    fn(flat, idx);
    for (int a = 0; a < g.dim; ++a) {
      if (++idx[static_cast<std::size_t>(a)] < n) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
}

SampledFunction random_box(const DyadicGrid& g, int scale, XorShift64Star& rng) {
  // Edges sit on the absolute scale-`scale` dyadic lattice, so the box is a
  // scale-`scale` step and orthonormal systems reproduce it exactly at any
  // cap >= scale. An axis too narrow to hold an aligned cell keeps its full
  // extent instead.
  const std::int64_t n = g.extent();
  const int s = std::max(0, std::min(scale, g.J));
  const std::int64_t w = std::int64_t{1} << (g.J - s);
  const std::int64_t lo_block = floor_div(g.lo + w - 1, w);
  const std::int64_t hi_block = floor_div(g.hi, w);
  std::vector<std::int64_t> a(static_cast<std::size_t>(g.dim), 0);
  std::vector<std::int64_t> b(static_cast<std::size_t>(g.dim), n);
  for (int j = 0; j < g.dim; ++j) {
    if (hi_block <= lo_block) continue;
    const std::int64_t start = lo_block + static_cast<std::int64_t>(rng.below(
                                              static_cast<std::uint64_t>(hi_block - lo_block)));
    const std::int64_t len =
        1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi_block - start)));
    a[static_cast<std::size_t>(j)] = start * w - g.lo;
    b[static_cast<std::size_t>(j)] = (start + len) * w - g.lo;
  }
  const double amp = signed_amp(rng);
  SampledFunction f = SampledFunction::zeros(g);
  for_each_cell(g, [&](std::int64_t flat, const std::vector<std::int64_t>& idx) {
    for (int j = 0; j < g.dim; ++j)
      if (idx[static_cast<std::size_t>(j)] < a[static_cast<std::size_t>(j)] ||
          idx[static_cast<std::size_t>(j)] >= b[static_cast<std::size_t>(j)])
        return;
    f.samples[static_cast<std::size_t>(flat)] = amp;
  });
  return f;
}

SampledFunction random_steps(const DyadicGrid& g, XorShift64Star& rng) {
  const std::int64_t n = g.extent();
  const int s = 1 + static_cast<int>(rng.below(3));  // 2^s blocks per axis
  const std::int64_t bw = std::max<std::int64_t>(1, n >> s);
  const std::int64_t nb = (n + bw - 1) / bw;
  std::int64_t blocks = 1;
  for (int j = 0; j < g.dim; ++j) blocks *= nb;
  std::vector<double> value(static_cast<std::size_t>(blocks));
  for (double& v : value) v = 2.0 * rng.uniform01() - 1.0;
  SampledFunction f = SampledFunction::zeros(g);
  for_each_cell(g, [&](std::int64_t flat, const std::vector<std::int64_t>& idx) {
    std::int64_t key = 0;
    for (int j = g.dim; j-- > 0;)
      key = key * nb + std::min(idx[static_cast<std::size_t>(j)] / bw, nb - 1);
    f.samples[static_cast<std::size_t>(flat)] = value[static_cast<std::size_t>(key)];
  });
  return f;
}

SampledFunction random_bumps(const DyadicGrid& g, double margin, XorShift64Star& rng) {
  const double h = g.step();
  const double lo = static_cast<double>(g.lo) * h;
  const double hi = static_cast<double>(g.hi) * h;
  const double span = hi - lo;
  const int terms = 1 + static_cast<int>(rng.below(3));
  std::vector<double> amp(static_cast<std::size_t>(terms));
  std::vector<std::vector<double>> center(static_cast<std::size_t>(terms));
  std::vector<double> width(static_cast<std::size_t>(terms));
  for (int r = 0; r < terms; ++r) {
    amp[static_cast<std::size_t>(r)] = signed_amp(rng);
    width[static_cast<std::size_t>(r)] = (0.03 + 0.1 * rng.uniform01()) * span;
    double c_lo = lo + margin, c_hi = hi - margin;
    if (c_hi <= c_lo) c_lo = c_hi = 0.5 * (lo + hi);
    center[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(g.dim));
    for (int j = 0; j < g.dim; ++j)
      center[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
          c_lo + (c_hi - c_lo) * rng.uniform01();
  }
  SampledFunction f = SampledFunction::zeros(g);
  for_each_cell(g, [&](std::int64_t flat, const std::vector<std::int64_t>& idx) {
    double v = 0.0;
    for (int r = 0; r < terms; ++r) {
      double e = 0.0;
      for (int j = 0; j < g.dim; ++j) {
        const double x = (static_cast<double>(g.lo + idx[static_cast<std::size_t>(j)]) + 0.5) * h;
        const double z = (x - center[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]) /
                         width[static_cast<std::size_t>(r)];
        e += z * z;
      }
      v += amp[static_cast<std::size_t>(r)] * std::exp(-e);
    }
    f.samples[static_cast<std::size_t>(flat)] = v;
  });
  return f;
}

SampledFunction random_spike(const DyadicGrid& g, XorShift64Star& rng) {
  const std::int64_t n = g.extent();
  const int m_cap = std::min(8, g.J);
  const int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(m_cap) + 1));
  const std::int64_t w = std::max<std::int64_t>(1, std::int64_t{1} << (g.J - m));
  std::vector<std::int64_t> start(static_cast<std::size_t>(g.dim));
  for (int j = 0; j < g.dim; ++j)
    start[static_cast<std::size_t>(j)] =
        static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(std::max<std::int64_t>(1, n - w))));
  const double height = std::ldexp(1.0, m);  // per-axis height keeps values printable
  SampledFunction f = SampledFunction::zeros(g);
  for_each_cell(g, [&](std::int64_t flat, const std::vector<std::int64_t>& idx) {
    for (int j = 0; j < g.dim; ++j) {
      const std::int64_t off = idx[static_cast<std::size_t>(j)] - start[static_cast<std::size_t>(j)];
      if (off < 0 || off >= w) return;
    }
    f.samples[static_cast<std::size_t>(flat)] = height;
  });
  return f;
}

// Safe translate index range at `scale`: every translate cell stays at least
// margin_cells inside the box.
void safe_nu_range(const ProjectorContext& axis, int scale, std::int64_t margin_cells,
                   std::int64_t& nu_lo, std::int64_t& nu_hi) {
  std::int64_t s_lo = 0, s_hi = 0;
  if (!support_bounds(axis.sys.phi, s_lo, s_hi))
    throw structural_error("axis scaling function is identically zero");
  const std::int64_t unit = std::int64_t{1} << axis.box.J;
  const std::int64_t L = axis.box.lo + margin_cells;
  const std::int64_t H = axis.box.hi - margin_cells;
  nu_lo = floor_div(((L - 1) << scale) - s_lo, unit) + 1;
  nu_hi = floor_div((H << scale) - s_hi, unit);  // inclusive
  if (nu_hi < nu_lo)
    throw structural_error("box too small for an interior corpus at this scale");
}

SampledFunction random_bandlimited(const TensorContext& ctx, int scale,
                                   XorShift64Star& rng) {
  const DyadicGrid& g = ctx.box;
  for (const ProjectorContext& axis : ctx.axes)
    if (scale < 0 || scale > axis.kappa_max)
      throw resolution_error("corpus scale outside the admissible range");
  std::int64_t s_lo = 0, s_hi = 0;
  std::int64_t margin_cells = 0;
  for (const ProjectorContext& axis : ctx.axes)
    if (support_bounds(axis.sys.phi, s_lo, s_hi))
      margin_cells = std::max(margin_cells, s_hi - s_lo);

  const int terms = 3 + static_cast<int>(rng.below(3));
  SampledFunction f = SampledFunction::zeros(g);
  const std::int64_t n = g.extent();
  for (int r = 0; r < terms; ++r) {
    const double amp = signed_amp(rng);
    std::vector<SampledFunction> factor;
    for (const ProjectorContext& axis : ctx.axes) {
      std::int64_t nu_lo = 0, nu_hi = 0;
      safe_nu_range(axis, scale, margin_cells, nu_lo, nu_hi);
      const std::int64_t nu =
          nu_lo + static_cast<std::int64_t>(
                      rng.below(static_cast<std::uint64_t>(nu_hi - nu_lo + 1)));
      factor.push_back(dilate_translate(axis.sys.phi, scale, nu, g.axis()));
    }
    // Accumulate the separable product over the (small) support of each factor.
    std::vector<std::int64_t> f_lo(factor.size()), f_hi(factor.size());
    bool empty = false;
    for (std::size_t j = 0; j < factor.size(); ++j) {
      if (!support_bounds(factor[j], f_lo[j], f_hi[j])) empty = true;
      f_lo[j] -= g.lo;  // to 0-based cells
      f_hi[j] -= g.lo;
    }
    if (empty) continue;
    std::vector<std::int64_t> idx = f_lo;
    for (;;) {
      double prod = amp;
      std::int64_t flat = 0;
      for (int j = g.dim; j-- > 0;) {
        prod *= factor[static_cast<std::size_t>(j)]
                    .samples[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]
                    .real();
        flat = flat * n + idx[static_cast<std::size_t>(j)];
      }
      f.samples[static_cast<std::size_t>(flat)] += prod;
      int j = 0;
      while (j < g.dim && ++idx[static_cast<std::size_t>(j)] >= f_hi[static_cast<std::size_t>(j)]) {
        idx[static_cast<std::size_t>(j)] = f_lo[static_cast<std::size_t>(j)];
        ++j;
      }
      if (j == g.dim) break;
    }
  }
  return f;
}

}  // namespace

double interior_margin(const TensorContext& ctx) {
  std::int64_t widest = 0;
  for (const ProjectorContext& axis : ctx.axes) {
    std::int64_t a = 0, b = 0;
    if (support_bounds(axis.sys.phi, a, b)) widest = std::max(widest, b - a);
  }
  return static_cast<double>(widest) * ctx.box.step();
}

std::vector<SampledFunction> make_corpus(const TensorContext& ctx,
                                         const std::string& generator, int count,
                                         int scale, XorShift64Star& rng) {
  if (count < 1) throw structural_error("corpus count must be positive");
  std::vector<SampledFunction> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    if (generator == "box") {
      out.push_back(random_box(ctx.box, scale, rng));
    } else if (generator == "steps") {
      out.push_back(random_steps(ctx.box, rng));
    } else if (generator == "bumps") {
      out.push_back(random_bumps(ctx.box, interior_margin(ctx), rng));
    } else if (generator == "spikes") {
      out.push_back(random_spike(ctx.box, rng));
    } else if (generator == "bandlimited") {
      out.push_back(random_bandlimited(ctx, scale, rng));
    } else {
      throw structural_error("unknown corpus generator: " + generator);
    }
  }
  return out;
}

SampledFunction unit_spike(const DyadicGrid& box, int m) {
  if (m < 0 || m > box.J) throw resolution_error("spike scale outside 0..J");
  const std::int64_t w = std::int64_t{1} << (box.J - m);
  if (box.lo > 0 || box.hi < w) throw structural_error("box must contain the spike support");
  const double height = std::ldexp(1.0, m * box.dim);
  SampledFunction f = SampledFunction::zeros(box);
  for_each_cell(box, [&](std::int64_t flat, const std::vector<std::int64_t>& idx) {
    for (int j = 0; j < box.dim; ++j) {
      const std::int64_t abs_cell = box.lo + idx[static_cast<std::size_t>(j)];
      if (abs_cell < 0 || abs_cell >= w) return;
    }
    f.samples[static_cast<std::size_t>(flat)] = height;
  });
  return f;
}

}  // namespace mrproj
