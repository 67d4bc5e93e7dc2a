#include "mrproj/czd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mrproj/errors.hpp"

namespace mrproj {
namespace {

// Prefix-sum view of f on its box: O(1) exact mass of any aligned index range.
struct MassTable {
  const DyadicGrid* g = nullptr;
  std::vector<double> abs_prefix;     // sum of |f| * h over cells before i
  std::vector<Complex> value_prefix;  // sum of f * h

  double abs_mass(std::int64_t a, std::int64_t b) const {  // absolute fine indices
    a = std::max(a, g->lo);
    b = std::min(b, g->hi);
    if (b <= a) return 0.0;
    return abs_prefix[static_cast<std::size_t>(b - g->lo)] -
           abs_prefix[static_cast<std::size_t>(a - g->lo)];
  }
  Complex value_mass(std::int64_t a, std::int64_t b) const {
    a = std::max(a, g->lo);
    b = std::min(b, g->hi);
    if (b <= a) return 0.0;
    return value_prefix[static_cast<std::size_t>(b - g->lo)] -
           value_prefix[static_cast<std::size_t>(a - g->lo)];
  }
};

MassTable make_mass_table(const SampledFunction& f) {
  MassTable t;
  t.g = &f.grid;
  const double h = f.grid.step();
  const std::size_t n = f.samples.size();
  t.abs_prefix.resize(n + 1, 0.0);
  t.value_prefix.resize(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    t.abs_prefix[i + 1] = t.abs_prefix[i] + std::abs(f.samples[i]) * h;
    t.value_prefix[i + 1] = t.value_prefix[i] + f.samples[i] * h;
  }
  return t;
}

// Fine-index range [a, b) of the dyadic interval at resolution J; kappa <= J.
void fine_range(const DyadicInterval& q, int J, std::int64_t& a, std::int64_t& b) {
  const int shift = J - q.kappa;
  a = q.nu << shift;
  b = (q.nu + 1) << shift;
}

int ceil_log2(std::int64_t n) {  // smallest t with 2^t >= n, n >= 1
  int t = 0;
  while ((std::int64_t{1} << t) < n) ++t;
  return t;
}

struct Selector {
  const MassTable* mass = nullptr;
  int J = 0;
  double alpha = 0.0;
  std::vector<DyadicInterval>* out = nullptr;

  double average(const DyadicInterval& q) const {
    std::int64_t a = 0, b = 0;
    fine_range(q, J, a, b);
    return mass->abs_mass(a, b) * std::ldexp(1.0, q.kappa);  // mass / 2^-kappa
  }

  // Depth-first, left child first; selection stops the descent. Descent never
  // passes resolution J: data is constant on cells, so a non-selected cell
  // cannot produce a selected descendant.
  void visit(const DyadicInterval& q) const {
    std::int64_t a = 0, b = 0;
    fine_range(q, J, a, b);
    if (mass->abs_mass(a, b) == 0.0) return;
    if (average(q) > alpha) {
      out->push_back(q);
      return;
    }
    if (q.kappa == J) return;
    visit({q.kappa + 1, 2 * q.nu});
    visit({q.kappa + 1, 2 * q.nu + 1});
  }

  // Smallest dyadic interval with endpoint 0 covering the given side of the
  // box, enlarged (doubled away from 0) until its average is <= alpha.
  void scan_side(std::int64_t cells, bool negative) const {
    if (cells <= 0) return;
    int kappa = J - ceil_log2(cells);
    DyadicInterval root{kappa, negative ? std::int64_t{-1} : std::int64_t{0}};
    while (average(root) > alpha) root.kappa -= 1;
    visit(root);
  }
};

}  // namespace

CZDecomposition cz_decompose(const SampledFunction& f, double alpha) {
  if (f.dim() != 1) throw structural_error("decomposition requires a 1-D function");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw structural_error("level alpha must be positive and finite");

  const MassTable mass = make_mass_table(f);
  CZDecomposition dec;
  dec.alpha = alpha;

  Selector sel{&mass, f.grid.J, alpha, &dec.selected};
  sel.scan_side(-f.grid.lo, true);  // [-2^t, 0) side, present iff lo < 0
  sel.scan_side(f.grid.hi, false);  // [0, 2^t) side, present iff hi > 0

  dec.good = f;
  for (const DyadicInterval& q : dec.selected) {
    std::int64_t a = 0, b = 0;
    fine_range(q, f.grid.J, a, b);
    const Complex avg = mass.value_mass(a, b) * std::ldexp(1.0, q.kappa);
    SampledFunction bad = SampledFunction::zeros(f.grid);
    const std::int64_t c_lo = std::max(a, f.grid.lo);
    const std::int64_t c_hi = std::min(b, f.grid.hi);
    for (std::int64_t c = c_lo; c < c_hi; ++c) {
      const std::size_t i = static_cast<std::size_t>(c - f.grid.lo);
      bad.samples[i] = f.samples[i] - avg;
      dec.good.samples[i] = avg;
    }
    dec.bad_parts.push_back(std::move(bad));
  }
  return dec;
}

CzReport verify_cz(const CZDecomposition& dec, const SampledFunction& f) {
  if (f.dim() != 1) throw structural_error("verification requires a 1-D function");
  const MassTable mass = make_mass_table(f);
  const int J = f.grid.J;
  const double alpha = dec.alpha;
  const double tol = 1e-9 * std::max({1.0, alpha, sup_norm(f)});
  CzReport rep;

  std::vector<char> covered(f.samples.size(), 0);
  double sum_len = 0.0;
  double worst_bracket = -std::numeric_limits<double>::infinity();
  for (const DyadicInterval& q : dec.selected) {
    std::int64_t a = 0, b = 0;
    fine_range(q, J, a, b);
    for (std::int64_t c = std::max(a, f.grid.lo); c < std::min(b, f.grid.hi); ++c)
      covered[static_cast<std::size_t>(c - f.grid.lo)] = 1;
    sum_len += std::ldexp(1.0, -q.kappa);
    const double avg = mass.abs_mass(a, b) * std::ldexp(1.0, q.kappa);
    worst_bracket = std::max({worst_bracket, alpha - avg, avg - 2.0 * alpha});
  }
  if (dec.selected.empty()) worst_bracket = 0.0;

  double off_max = 0.0;
  for (std::size_t i = 0; i < f.samples.size(); ++i)
    if (!covered[i]) off_max = std::max(off_max, std::abs(f.samples[i]));
  rep.small_off_union = {off_max - alpha <= tol, off_max - alpha};

  const double l1 = mass.abs_mass(f.grid.lo, f.grid.hi);
  rep.total_length = {sum_len - l1 / alpha <= tol, sum_len - l1 / alpha};

  rep.averages_bracketed = {worst_bracket <= tol, worst_bracket};

  // A bad part integrates to zero over its full interval; the stored samples
  // cover only the box, so the overhang contributes exactly -avg * (length
  // outside the box).
  double worst_mean = 0.0;
  for (std::size_t r = 0; r < dec.selected.size(); ++r) {
    const DyadicInterval& q = dec.selected[r];
    std::int64_t a = 0, b = 0;
    fine_range(q, J, a, b);
    const Complex avg = mass.value_mass(a, b) * std::ldexp(1.0, q.kappa);
    const std::int64_t inside =
        std::max<std::int64_t>(0, std::min(b, f.grid.hi) - std::max(a, f.grid.lo));
    const double outside_len =
        std::ldexp(1.0, -q.kappa) - static_cast<double>(inside) * f.grid.step();
    Complex integral = 0.0;
    if (r < dec.bad_parts.size())
      for (const Complex& v : dec.bad_parts[r].samples) integral += v;
    integral *= f.grid.step();
    worst_mean = std::max(worst_mean, std::abs(integral - avg * outside_len));
  }
  rep.bad_parts_mean_zero = {worst_mean <= tol, worst_mean};

  const double good_max = sup_norm(dec.good);
  rep.good_bounded = {good_max - 2.0 * alpha <= tol, good_max - 2.0 * alpha};
  return rep;
}

}  // namespace mrproj
