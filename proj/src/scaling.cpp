#include "mrproj/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <utility>
#include <vector>

#include "mrproj/errors.hpp"

namespace mrproj {
namespace {

// Radially decreasing envelope of a 1-D sample set: at(r) is the largest
// |sample| found at radius >= r, zero beyond the data. Minimal among even
// decreasing functions dominating the samples.
struct Envelope {
  std::vector<double> radii;   // ascending, deduplicated
  std::vector<double> values;  // suffix maxima aligned with radii

  double at(double r) const {
    if (radii.empty()) return 0.0;
    auto it = std::lower_bound(radii.begin(), radii.end(), r);
    if (it == radii.end()) return 0.0;
    return values[static_cast<std::size_t>(it - radii.begin())];
  }
  double r_max() const { return radii.empty() ? 0.0 : radii.back(); }
};

Envelope radial_envelope(const SampledFunction& f) {
  const DyadicGrid& g = f.grid;
  const double h = g.step();
  std::vector<std::pair<double, double>> pts;
  pts.reserve(f.samples.size());
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    const double x = (static_cast<double>(g.lo) + static_cast<double>(i)) * h + 0.5 * h;
    pts.emplace_back(std::abs(x), std::abs(f.samples[i]));
  }
  std::sort(pts.begin(), pts.end());
  Envelope env;
  env.radii.reserve(pts.size());
  env.values.reserve(pts.size());
  for (const auto& [r, v] : pts) {
    if (!env.radii.empty() && env.radii.back() == r) {
      env.values.back() = std::max(env.values.back(), v);
    } else {
      env.radii.push_back(r);
      env.values.push_back(v);
    }
  }
  for (std::size_t i = env.values.size(); i-- > 1;)
    env.values[i - 1] = std::max(env.values[i - 1], env.values[i]);
  return env;
}

// The unit-window majorant from the envelope: Phi(t) = env(|t| - 1/2), so the
// integral of Phi over [x - 1/2, x + 1/2] dominates env(|x|) pointwise.
double shifted_majorant(const Envelope& env, double t) {
  return env.at(std::max(std::abs(t) - 0.5, 0.0));
}

// max over grid points of |f| minus the midpoint-rule integral of the shifted
// envelope over the unit window centered there. Nonpositive by construction
// up to rounding; computed with sliding prefix sums.
double window_residual(const SampledFunction& f, const Envelope& env) {
  const DyadicGrid& g = f.grid;
  const double h = g.step();
  const std::int64_t n = g.extent();
  if (g.J == 0) {
    double worst = -1.0;
    for (std::int64_t i = 0; i < n; ++i) {
      const double x = (static_cast<double>(g.lo + i) + 0.5) * h;
      worst = std::max(worst, std::abs(f.samples[static_cast<std::size_t>(i)]) -
                                  shifted_majorant(env, x));
    }
    return worst;
  }
  const std::int64_t half = std::int64_t{1} << (g.J - 1);
  const std::int64_t w = std::int64_t{1} << g.J;
  // Window subcell midpoints for sample i sit at the lattice edges
  // (lo + i + 1 - half + c) * h, c = 0..w-1.
  const std::int64_t e_lo = g.lo + 1 - half;
  const std::int64_t e_cnt = n + w;
  std::vector<double> prefix(static_cast<std::size_t>(e_cnt) + 1, 0.0);
  for (std::int64_t j = 0; j < e_cnt; ++j)
    prefix[static_cast<std::size_t>(j) + 1] =
        prefix[static_cast<std::size_t>(j)] +
        shifted_majorant(env, static_cast<double>(e_lo + j) * h);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < n; ++i) {
    const double integral =
        h * (prefix[static_cast<std::size_t>(i + w)] - prefix[static_cast<std::size_t>(i)]);
    worst = std::max(worst,
                     std::abs(f.samples[static_cast<std::size_t>(i)]) - integral);
  }
  return worst;
}

// Suffix quadrature machinery on the radius lattice rho_j = (j + 1/2) h.
struct RadialTable {
  double h = 0.0;
  std::vector<double> phi;   // Phi(rho_j)
  std::vector<double> tail;  // int_{|y| >= rho_j} Phi(y) dy  (two-sided)
};

RadialTable radial_table(const Envelope& env, double h) {
  RadialTable t;
  t.h = h;
  const double reach = env.r_max() + 0.5;
  const std::size_t m = static_cast<std::size_t>(std::ceil(reach / h)) + 2;
  t.phi.resize(m);
  for (std::size_t j = 0; j < m; ++j)
    t.phi[j] = shifted_majorant(env, (static_cast<double>(j) + 0.5) * h);
  t.tail.assign(m, 0.0);
  double acc = 0.0;
  for (std::size_t j = m; j-- > 0;) {
    acc += h * t.phi[j];
    t.tail[j] = 2.0 * acc;
  }
  return t;
}

// int_0^inf tau * tail(tau) dtau on the lattice.
double first_tail_moment(const RadialTable& t) {
  double s = 0.0;
  for (std::size_t j = 0; j < t.tail.size(); ++j)
    s += t.h * (static_cast<double>(j) + 0.5) * t.h * t.tail[j];
  return s;
}

// int_1^inf tail(s) ds on the lattice.
double tail_mass_beyond_one(const RadialTable& t) {
  double s = 0.0;
  for (std::size_t j = 0; j < t.tail.size(); ++j) {
    const double rho = (static_cast<double>(j) + 0.5) * t.h;
    if (rho >= 1.0) s += t.h * t.tail[j];
  }
  return s;
}

// Zero-padded central difference quotient of the dual's samples.
SampledFunction difference_quotient(const SampledFunction& f) {
  const std::int64_t n = f.grid.extent();
  const double inv2h = 1.0 / (2.0 * f.grid.step());
  SampledFunction d = SampledFunction::zeros(f.grid);
  for (std::int64_t i = 0; i < n; ++i) {
    const Complex right = i + 1 < n ? f.samples[static_cast<std::size_t>(i + 1)] : Complex{};
    const Complex left = i > 0 ? f.samples[static_cast<std::size_t>(i - 1)] : Complex{};
    d.samples[static_cast<std::size_t>(i)] = (right - left) * inv2h;
  }
  return d;
}

std::vector<double> integer_point_values(const double* h, int len) {
  // phi(0) = phi(len-1) = 0; the interior values are the eigenvector of
  // T_{ij} = sqrt(2) h_{2i-j} (i, j = 1..len-2) at eigenvalue 1, normalized
  // to sum 1. One eigen-equation is traded for the normalization row.
  const int n = len - 2;
  const double rt2 = std::sqrt(2.0);
  std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  for (int i = 0; i < n - 1; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = 2 * (i + 1) - (j + 1);
      double v = (k >= 0 && k < len) ? rt2 * h[k] : 0.0;
      if (i == j) v -= 1.0;
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  }
  for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(j)] = 1.0;
  a[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(n)] = 1.0;

  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
        piv = r;
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
    const double d = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double m = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / d;
      if (m == 0.0) continue;
      for (int c = col; c <= n; ++c)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            m * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
    }
  }
  std::vector<double> v(static_cast<std::size_t>(len), 0.0);
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i) + 1] =
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)] /
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  return v;
}

}  // namespace

ScalingSystem haar_system(int J, const DyadicGrid& box) {
  validate_grid(box);
  if (box.dim != 1) throw structural_error("scaling systems are one dimensional");
  if (box.J != J) throw resolution_error("box resolution does not match J");
  const std::int64_t one = std::int64_t{1} << J;
  if (box.lo > 0 || box.hi < one)
    throw structural_error("box must contain [0,1)");
  SampledFunction phi = SampledFunction::zeros(box);
  for (std::int64_t i = 0; i < box.extent(); ++i)
    if (box.lo + i >= 0 && box.lo + i < one)
      phi.samples[static_cast<std::size_t>(i)] = 1.0;
  ScalingSystem sys;
  sys.phi = phi;
  sys.phi_dual = std::move(phi);
  sys.orthonormal = true;
  sys.condition_report = validate_conditions(sys);
  return sys;
}

ScalingSystem daubechies_system(int N, int J, int cascade_iters) {
  int len = 0;
  const double* h = daubechies_filter(N, len);
  if (J < 0 || J > 52) throw resolution_error("J out of range 0..52");
  if (cascade_iters < J)
    throw structural_error("cascade iterations must reach the grid resolution");
  const std::int64_t support = 2 * N - 1;
  const DyadicGrid box{J, 0, support << J, 1};
  if (N == 1) return haar_system(J, box);

  // Exact dyadic refinement: integer values, then each level fills the odd
  // multiples of the next spacing from the two-scale relation. Values at
  // already-known points are final, so level J + 1 (the midpoint lattice)
  // ends the recursion regardless of cascade_iters.
  const double rt2 = std::sqrt(2.0);
  std::vector<double> cur = integer_point_values(h, len);
  for (int level = 1; level <= J + 1; ++level) {
    const std::int64_t stride = std::int64_t{1} << (level - 1);
    const std::int64_t m_hi = support << level;
    std::vector<double> next(static_cast<std::size_t>(m_hi) + 1, 0.0);
    for (std::int64_t m = 0; m <= m_hi; m += 2)
      next[static_cast<std::size_t>(m)] = cur[static_cast<std::size_t>(m / 2)];
    const std::int64_t old_hi = support << (level - 1);
    for (std::int64_t m = 1; m <= m_hi; m += 2) {
      double acc = 0.0;
      for (int k = 0; k < len; ++k) {
        const std::int64_t idx = m - k * stride;
        if (idx >= 0 && idx <= old_hi) acc += h[k] * cur[static_cast<std::size_t>(idx)];
      }
      next[static_cast<std::size_t>(m)] = rt2 * acc;
    }
    cur = std::move(next);
  }

  SampledFunction phi = SampledFunction::zeros(box);
  for (std::int64_t i = 0; i < box.extent(); ++i)
    phi.samples[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(2 * i + 1)];
  ScalingSystem sys;
  sys.phi = phi;
  sys.phi_dual = std::move(phi);
  sys.orthonormal = true;
  sys.condition_report = validate_conditions(sys);
  return sys;
}

double biorthogonality_defect(const ScalingSystem& sys, int shift_range) {
  if (shift_range < 1) throw structural_error("shift range must be >= 1");
  const DyadicGrid& g = sys.phi.grid;
  const std::int64_t unit = std::int64_t{1} << g.J;
  std::int64_t a = 0, b = 0;
  const bool phi_nonzero = support_bounds(sys.phi, a, b);
  std::int64_t ad = 0, bd = 0;
  const bool dual_nonzero = support_bounds(sys.phi_dual, ad, bd);
  const std::int64_t r = shift_range;
  if (phi_nonzero && (a - r * unit < g.lo || b + r * unit > g.hi))
    throw structural_error("shifted support leaves the box");
  if (dual_nonzero && (ad - r * unit < g.lo || bd + r * unit > g.hi))
    throw structural_error("shifted support leaves the box");

  std::vector<SampledFunction> shifted_phi, shifted_dual;
  for (std::int64_t nu = -r; nu <= r; ++nu) {
    shifted_phi.push_back(dilate_translate(sys.phi, 0, nu, g));
    shifted_dual.push_back(dilate_translate(sys.phi_dual, 0, nu, g));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < shifted_phi.size(); ++i)
    for (std::size_t j = 0; j < shifted_dual.size(); ++j) {
      const Complex ip = inner_product(shifted_phi[i], shifted_dual[j]);
      const double expect = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(ip - expect));
    }
  return worst;
}

ConditionReport validate_conditions(const ScalingSystem& sys) {
  const double h = sys.phi.grid.step();
  ConditionReport rep;

  const Envelope env_phi = radial_envelope(sys.phi);
  const double tol = 1e-12 * std::max(1.0, env_phi.at(0.0));
  rep.majorant_residual = window_residual(sys.phi, env_phi);
  rep.majorant_ok = rep.majorant_residual <= tol;

  const RadialTable tab_phi = radial_table(env_phi, h);
  rep.tail_moment_phi = first_tail_moment(tab_phi);

  const SampledFunction dq = difference_quotient(sys.phi_dual);
  const Envelope env_dq = radial_envelope(dq);
  rep.derivative_majorant_ok =
      window_residual(dq, env_dq) <= 1e-12 * std::max(1.0, env_dq.at(0.0));
  rep.tail_moment_dual_deriv = first_tail_moment(radial_table(env_dq, h));

  const Envelope env_dual = radial_envelope(sys.phi_dual);
  rep.dual_majorant_ok =
      window_residual(sys.phi_dual, env_dual) <= 1e-12 * std::max(1.0, env_dual.at(0.0));
  const RadialTable tab_dual = radial_table(env_dual, h);
  const double beyond = tail_mass_beyond_one(tab_dual);
  rep.dual_tail_ok = std::isfinite(beyond);

  // mu dominates both functions; for generated (orthonormal) systems the two
  // envelopes coincide and mu is just the canonical majorant.
  double mu_moment = 0.0;
  const double reach = std::max(env_phi.r_max(), env_dual.r_max()) + 0.5;
  const std::size_t m = static_cast<std::size_t>(std::ceil(reach / h)) + 2;
  for (std::size_t j = 0; j < m; ++j) {
    const double rho = (static_cast<double>(j) + 0.5) * h;
    const double mu = std::max(shifted_majorant(env_phi, rho), shifted_majorant(env_dual, rho));
    mu_moment += h * mu * std::log1p(rho);
  }
  rep.mu_log_moment = mu_moment;

  rep.note =
      "integrals truncated to the sampling box; flags state on-box consistency, "
      "not integrability over the whole line";
  return rep;
}

ScalingSystem embedded(const ScalingSystem& sys, std::int64_t lo, std::int64_t hi) {
  ScalingSystem out;
  out.phi = embedded(sys.phi, lo, hi);
  out.phi_dual = embedded(sys.phi_dual, lo, hi);
  out.orthonormal = sys.orthonormal;
  out.condition_report = validate_conditions(out);
  return out;
}

void write_scaling_system(std::ostream& os, const ScalingSystem& sys) {
  write_function(os, sys.phi);
  write_function(os, sys.phi_dual);
}

ScalingSystem read_scaling_system(std::istream& is) {
  ScalingSystem sys;
  sys.phi = read_function(is);
  sys.phi_dual = read_function(is);
  if (sys.phi.grid != sys.phi_dual.grid)
    throw structural_error("scaling pair must share one grid");
  if (sys.phi.grid.dim != 1) throw structural_error("scaling systems are one dimensional");
  sys.orthonormal = sys.phi.samples == sys.phi_dual.samples;
  sys.condition_report = validate_conditions(sys);
  return sys;
}

ScalingSystem make_scaling_system(const std::string& spec, const DyadicGrid& box) {
  validate_grid(box);
  const DyadicGrid axis = box.axis();
  if (spec == "haar") return haar_system(axis.J, axis);
  if (spec.size() > 2 && spec.compare(0, 2, "db") == 0) {
    int order = 0;
    try {
      std::size_t pos = 0;
      order = std::stoi(spec.substr(2), &pos);
      if (pos != spec.size() - 2) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
      throw structural_error("unrecognized scaling spec: " + spec);
    }
    ScalingSystem sys = daubechies_system(order, axis.J, axis.J);
    return embedded(sys, axis.lo, axis.hi);
  }
  if (spec.compare(0, 5, "file:") == 0) {
    const std::string path = spec.substr(5);
    std::ifstream is(path);
    if (!is) throw structural_error("cannot open scaling file: " + path);
    ScalingSystem sys = read_scaling_system(is);
    if (sys.phi.grid.J != axis.J)
      throw resolution_error("scaling file resolution does not match the box");
    if (sys.phi.grid.lo != axis.lo || sys.phi.grid.hi != axis.hi)
      return embedded(sys, axis.lo, axis.hi);
    return sys;
  }
  throw structural_error("unrecognized scaling spec: " + spec);
}

}  // namespace mrproj
