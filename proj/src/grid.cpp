#include "mrproj/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace mrproj {

double DyadicGrid::step() const { return std::ldexp(1.0, -J); }

std::int64_t DyadicGrid::cells() const {
  std::int64_t n = extent(), c = 1;
  for (int j = 0; j < dim; ++j) c *= n;
  return c;
}

double DyadicGrid::cell_measure() const { return std::ldexp(1.0, -J * dim); }

void validate_grid(const DyadicGrid& g) {
  if (g.J < 0 || g.J > 52)
    throw structural_error("grid resolution J must lie in [0, 52], got " + std::to_string(g.J));
  if (g.hi <= g.lo)
    throw structural_error("grid support is empty: hi <= lo");
  if (g.dim < 1)
    throw structural_error("grid dimension must be >= 1");
}

SampledFunction SampledFunction::zeros(const DyadicGrid& g) {
  validate_grid(g);
  SampledFunction f;
  f.grid = g;
  f.samples.assign(static_cast<std::size_t>(g.cells()), Complex{0.0, 0.0});
  return f;
}

static void require_same_grid(const SampledFunction& f, const SampledFunction& g) {
  if (!(f.grid == g.grid))
    throw structural_error("grid mismatch: operands must share J, support and dimension");
}

Complex inner_product(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g);
  Complex acc{0.0, 0.0};
  const std::size_t n = f.samples.size();
  for (std::size_t i = 0; i < n; ++i) acc += f.samples[i] * std::conj(g.samples[i]);
  return acc * f.grid.cell_measure();
}

double lp_norm(const SampledFunction& f, double p) {
  if (std::isinf(p) && p > 0) return sup_norm(f);
  if (!(p >= 1.0))
    throw std::domain_error("lp_norm requires p >= 1 (or the infinity sentinel)");
  double acc = 0.0;
  if (p == 2.0) {
    for (const Complex& z : f.samples) acc += std::norm(z);
  } else if (p == 1.0) {
    for (const Complex& z : f.samples) acc += std::abs(z);
  } else {
    for (const Complex& z : f.samples) {
      double a = std::abs(z);
      if (a > 0.0) acc += std::pow(a, p);
    }
  }
  return std::pow(acc * f.grid.cell_measure(), 1.0 / p);
}

double sup_norm(const SampledFunction& f) {
  double m = 0.0;
  for (const Complex& z : f.samples) m = std::max(m, std::abs(z));
  return m;
}

SampledFunction dilate_translate(const SampledFunction& phi, int kappa,
                                 std::int64_t nu, const DyadicGrid& target) {
  if (phi.dim() != 1 || target.dim != 1)
    throw structural_error("dilate_translate acts on 1-D functions");
  if (phi.grid.J != target.J)
    throw structural_error("dilate_translate requires matching resolution J");
  if (kappa < 0 || kappa > target.J - kAccuracyMargin)
    throw resolution_error("scale kappa " + std::to_string(kappa) +
                           " outside [0, J - " + std::to_string(kAccuracyMargin) +
                           "] at J = " + std::to_string(target.J));
  SampledFunction out = SampledFunction::zeros(target);
  const std::int64_t stride = std::int64_t{1} << kappa;
  const std::int64_t shift = nu << target.J;
  const std::int64_t n = target.extent();
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t src = (target.lo + i) * stride - shift;
    if (src >= phi.grid.lo && src < phi.grid.hi)
      out.samples[static_cast<std::size_t>(i)] =
          phi.samples[static_cast<std::size_t>(src - phi.grid.lo)];
  }
  return out;
}

bool support_bounds(const SampledFunction& f, std::int64_t& a, std::int64_t& b) {
  if (f.dim() != 1) throw structural_error("support_bounds expects a 1-D function");
  const std::int64_t n = f.grid.extent();
  std::int64_t first = -1, last = -1;
  for (std::int64_t i = 0; i < n; ++i) {
    if (f.samples[static_cast<std::size_t>(i)] != Complex{0.0, 0.0}) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) {
    a = b = 0;
    return false;
  }
  a = f.grid.lo + first;
  b = f.grid.lo + last + 1;
  return true;
}

SampledFunction embedded(const SampledFunction& f, std::int64_t lo, std::int64_t hi) {
  if (f.dim() != 1) throw structural_error("embedded expects a 1-D function");
  if (lo > f.grid.lo || hi < f.grid.hi)
    throw structural_error("embedding range must contain the original support");
  SampledFunction out = SampledFunction::zeros({f.grid.J, lo, hi, 1});
  const std::int64_t off = f.grid.lo - lo;
  for (std::int64_t i = 0; i < f.grid.extent(); ++i)
    out.samples[static_cast<std::size_t>(off + i)] = f.samples[static_cast<std::size_t>(i)];
  return out;
}

void accumulate(SampledFunction& acc, const SampledFunction& x, Complex w) {
  require_same_grid(acc, x);
  const std::size_t n = acc.samples.size();
  for (std::size_t i = 0; i < n; ++i) acc.samples[i] += w * x.samples[i];
}

void write_function(std::ostream& os, const SampledFunction& f) {
  validate_grid(f.grid);
  os << f.grid.J << ' ' << f.grid.lo << ' ' << f.grid.hi << ' ' << f.grid.dim << '\n';
  char buf[64];
  for (const Complex& z : f.samples) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", z.real(), z.imag());
    os << buf;
  }
}

void write_function_file(const std::string& path, const SampledFunction& f) {
  std::ofstream os(path);
  if (!os) throw structural_error("cannot open for writing: " + path);
  write_function(os, f);
}

SampledFunction read_function(std::istream& is) {
  DyadicGrid g;
  if (!(is >> g.J >> g.lo >> g.hi >> g.dim))
    throw structural_error("malformed function header: expected 'J lo hi d'");
  validate_grid(g);
  SampledFunction f = SampledFunction::zeros(g);
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    double re, im;
    if (!(is >> re >> im))
      throw structural_error("truncated sample list at entry " + std::to_string(i) +
                             " of " + std::to_string(f.samples.size()));
    f.samples[i] = Complex{re, im};
  }
  return f;
}

SampledFunction read_function_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw structural_error("cannot open for reading: " + path);
  return read_function(is);
}

}  // namespace mrproj
