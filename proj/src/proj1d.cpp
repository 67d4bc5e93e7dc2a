#include "mrproj/proj1d.hpp"

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

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

void check_kappa(const ProjectorContext& ctx, int kappa) {
  if (kappa < 0 || kappa > ctx.kappa_max)
    throw resolution_error("scale index " + std::to_string(kappa) +
                           " outside 0.." + std::to_string(ctx.kappa_max));
}

void check_domain(const ProjectorContext& ctx, const SampledFunction& f) {
  if (f.grid != ctx.box)
    throw structural_error("function must live on the context box");
}

// Active translate range: all nu whose translate support meets [f_lo, f_hi).
// The translate of a function supported on fine indices [s_lo, s_hi) is
// nonzero exactly on absolute cells a with s_lo <= 2^kappa a - nu 2^J < s_hi.
struct NuRange {
  std::int64_t lo = 0, hi = 0;  // half-open
};

NuRange active_nus(std::int64_t f_lo, std::int64_t f_hi, std::int64_t s_lo,
                   std::int64_t s_hi, int kappa, int J) {
  const std::int64_t unit = std::int64_t{1} << J;
  NuRange r;
  r.lo = floor_div((f_lo << kappa) - s_hi, unit) + 1;
  r.hi = ceil_div((f_hi << kappa) - s_lo, unit);
  if (r.hi < r.lo) r.hi = r.lo;
  return r;
}

// Absolute cells where the translate is nonzero, clipped to [c_lo, c_hi).
void translate_cells(std::int64_t s_lo, std::int64_t s_hi, int kappa, std::int64_t nu,
                     int J, std::int64_t c_lo, std::int64_t c_hi, std::int64_t& a_lo,
                     std::int64_t& a_hi) {
  const std::int64_t shift = nu << J;
  a_lo = std::max(c_lo, ceil_div(s_lo + shift, std::int64_t{1} << kappa));
  a_hi = std::min(c_hi, ceil_div(s_hi + shift, std::int64_t{1} << kappa));
  if (a_hi < a_lo) a_hi = a_lo;
}

bool all_real(const std::vector<Complex>& v, std::int64_t lo, std::int64_t hi) {
  for (std::int64_t i = lo; i < hi; ++i)
    if (v[static_cast<std::size_t>(i)].imag() != 0.0) return false;
  return true;
}

// Per-call facts about the input line: tight-enough nonzero window and
// whether every sample in it is real. Computed once and shared by the two
// scales of a detail.
struct LineInfo {
  std::int64_t lo = 0, hi = 0;  // absolute cells, half-open
  bool real = false;
  bool empty = true;
};

LineInfo scan_line(const ProjectorContext& ctx, const SampledFunction& f) {
  LineInfo li;
  if (!support_bounds(f, li.lo, li.hi)) return li;
  li.empty = false;
  li.real = all_real(f.samples, li.lo - ctx.box.lo, li.hi - ctx.box.lo);
  return li;
}

LineInfo window_info(const ProjectorContext& ctx, const SampledFunction& f,
                     const SupportWindow& w) {
  LineInfo li;
  if (w.lo >= w.hi) return li;
  li.lo = w.lo;
  li.hi = w.hi;
  li.empty = false;
  li.real = all_real(f.samples, w.lo - ctx.box.lo, w.hi - ctx.box.lo);
  return li;
}

// Coefficients over the active range as a dense block: entry i corresponds
// to translate nu_lo + i. Purely real inputs use a double-only inner loop;
// the skipped imaginary products are exact zeros, so the values agree with
// the complex path.
struct CoeffBlock {
  std::int64_t nu_lo = 0;
  std::vector<Complex> c;
  bool real = false;  // every entry has zero imaginary part
};

CoeffBlock coeff_block(const ProjectorContext& ctx, const SampledFunction& f, int kappa,
                       const LineInfo& li) {
  CoeffBlock out;
  if (li.empty) return out;
  std::int64_t s_lo = 0, s_hi = 0;
  if (!support_bounds(ctx.sys.phi_dual, s_lo, s_hi)) return out;

  const int J = ctx.box.J;
  const double weight = std::ldexp(ctx.box.cell_measure(), kappa);  // 2^kappa * h
  const NuRange nus = active_nus(li.lo, li.hi, s_lo, s_hi, kappa, J);
  const std::vector<Complex>& dual = ctx.sys.phi_dual.samples;
  const std::vector<Complex>& fs = f.samples;
  out.nu_lo = nus.lo;
  out.c.resize(static_cast<std::size_t>(nus.hi - nus.lo));
  out.real = ctx.dual_real && li.real;
  if (out.real) {
    const double* fd = reinterpret_cast<const double*>(fs.data());
    const double* dd = reinterpret_cast<const double*>(dual.data());
    for (std::int64_t nu = nus.lo; nu < nus.hi; ++nu) {
      std::int64_t a_lo = 0, a_hi = 0;
      translate_cells(s_lo, s_hi, kappa, nu, J, li.lo, li.hi, a_lo, a_hi);
      double acc = 0.0;
      const std::int64_t base = (nu << J) + ctx.box.lo;
      for (std::int64_t a = a_lo; a < a_hi; ++a)
        acc += fd[2 * (a - ctx.box.lo)] * dd[2 * ((a << kappa) - base)];
      out.c[static_cast<std::size_t>(nu - nus.lo)] = Complex(acc * weight, 0.0);
    }
    return out;
  }
  for (std::int64_t nu = nus.lo; nu < nus.hi; ++nu) {
    std::int64_t a_lo = 0, a_hi = 0;
    translate_cells(s_lo, s_hi, kappa, nu, J, li.lo, li.hi, a_lo, a_hi);
    Complex acc = 0.0;
    const std::int64_t shift = nu << J;
    for (std::int64_t a = a_lo; a < a_hi; ++a) {
      const std::int64_t src = (a << kappa) - shift - ctx.box.lo;
      acc += fs[static_cast<std::size_t>(a - ctx.box.lo)] *
             std::conj(dual[static_cast<std::size_t>(src)]);
    }
    out.c[static_cast<std::size_t>(nu - nus.lo)] = acc * weight;
  }
  return out;
}

// Adds sign * (sum of coefficient-weighted primal translates) to out.
void scatter_block(const ProjectorContext& ctx, const CoeffBlock& block, int kappa,
                   double sign, SampledFunction& out) {
  std::int64_t s_lo = 0, s_hi = 0;
  if (!support_bounds(ctx.sys.phi, s_lo, s_hi)) return;
  const int J = ctx.box.J;
  const std::vector<Complex>& prim = ctx.sys.phi.samples;
  if (block.real && ctx.phi_real) {
    double* od = reinterpret_cast<double*>(out.samples.data());
    const double* pd = reinterpret_cast<const double*>(prim.data());
    for (std::size_t i = 0; i < block.c.size(); ++i) {
      const double c = sign * block.c[i].real();
      if (c == 0.0) continue;
      const std::int64_t nu = block.nu_lo + static_cast<std::int64_t>(i);
      std::int64_t a_lo = 0, a_hi = 0;
      translate_cells(s_lo, s_hi, kappa, nu, J, ctx.box.lo, ctx.box.hi, a_lo, a_hi);
      const std::int64_t base = (nu << J) + ctx.box.lo;
      for (std::int64_t a = a_lo; a < a_hi; ++a)
        od[2 * (a - ctx.box.lo)] += c * pd[2 * ((a << kappa) - base)];
    }
    return;
  }
  for (std::size_t i = 0; i < block.c.size(); ++i) {
    const Complex c = sign * block.c[i];
    const std::int64_t nu = block.nu_lo + static_cast<std::int64_t>(i);
    std::int64_t a_lo = 0, a_hi = 0;
    translate_cells(s_lo, s_hi, kappa, nu, J, ctx.box.lo, ctx.box.hi, a_lo, a_hi);
    const std::int64_t shift = nu << J;
    for (std::int64_t a = a_lo; a < a_hi; ++a) {
      const std::int64_t src = (a << kappa) - shift - ctx.box.lo;
      out.samples[static_cast<std::size_t>(a - ctx.box.lo)] +=
          c * prim[static_cast<std::size_t>(src)];
    }
  }
}

SampledFunction project_impl(const ProjectorContext& ctx, const SampledFunction& f,
                             int kappa, const LineInfo& li) {
  const CoeffBlock block = coeff_block(ctx, f, kappa, li);
  SampledFunction out = SampledFunction::zeros(ctx.box);
  scatter_block(ctx, block, kappa, 1.0, out);
  return out;
}

SampledFunction detail_impl(const ProjectorContext& ctx, const SampledFunction& f,
                            int kappa, const LineInfo& li) {
  if (kappa == 0) return project_impl(ctx, f, 0, li);
  // Both scales scatter into one buffer; the subtraction costs no extra pass.
  const CoeffBlock fine = coeff_block(ctx, f, kappa, li);
  const CoeffBlock coarse = coeff_block(ctx, f, kappa - 1, li);
  SampledFunction out = SampledFunction::zeros(ctx.box);
  scatter_block(ctx, fine, kappa, 1.0, out);
  scatter_block(ctx, coarse, kappa - 1, -1.0, out);
  return out;
}

}  // namespace

ProjectorContext make_projector_context(const ScalingSystem& sys, const DyadicGrid& box) {
  validate_grid(box);
  if (box.dim != 1) throw structural_error("projector context box must be one dimensional");
  if (sys.phi.grid.J != box.J)
    throw resolution_error("scaling system resolution does not match the box");
  ProjectorContext ctx;
  ctx.box = box;
  ctx.kappa_max = box.J - kAccuracyMargin;
  if (ctx.kappa_max < 0)
    throw resolution_error("box resolution too coarse for any projector scale");
  ctx.sys = (sys.phi.grid.lo == box.lo && sys.phi.grid.hi == box.hi)
                ? sys
                : embedded(sys, box.lo, box.hi);
  const std::int64_t n = ctx.sys.phi.grid.cells();
  ctx.phi_real = all_real(ctx.sys.phi.samples, 0, n);
  ctx.dual_real = all_real(ctx.sys.phi_dual.samples, 0, n);
  return ctx;
}

std::map<std::int64_t, Complex> coefficients(const ProjectorContext& ctx,
                                             const SampledFunction& f, int kappa) {
  check_domain(ctx, f);
  check_kappa(ctx, kappa);
  const CoeffBlock block = coeff_block(ctx, f, kappa, scan_line(ctx, f));
  std::map<std::int64_t, Complex> out;
  for (std::size_t i = 0; i < block.c.size(); ++i)
    out.emplace(block.nu_lo + static_cast<std::int64_t>(i), block.c[i]);
  return out;
}

SampledFunction project(const ProjectorContext& ctx, const SampledFunction& f, int kappa) {
  check_domain(ctx, f);
  check_kappa(ctx, kappa);
  return project_impl(ctx, f, kappa, scan_line(ctx, f));
}

SampledFunction project(const ProjectorContext& ctx, const SampledFunction& f, int kappa,
                        const SupportWindow& window) {
  check_domain(ctx, f);
  check_kappa(ctx, kappa);
  return project_impl(ctx, f, kappa, window_info(ctx, f, window));
}

SampledFunction detail(const ProjectorContext& ctx, const SampledFunction& f, int kappa) {
  check_domain(ctx, f);
  check_kappa(ctx, kappa);
  return detail_impl(ctx, f, kappa, scan_line(ctx, f));
}

SampledFunction detail(const ProjectorContext& ctx, const SampledFunction& f, int kappa,
                       const SupportWindow& window) {
  check_domain(ctx, f);
  check_kappa(ctx, kappa);
  return detail_impl(ctx, f, kappa, window_info(ctx, f, window));
}

}  // namespace mrproj
