#include "mrproj/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrproj/corpus.hpp"
#include "mrproj/czd.hpp"
#include "mrproj/lpverify.hpp"
#include "mrproj/rng.hpp"
#include "mrproj/scaling.hpp"

namespace mrproj {
namespace {

using Clock = std::chrono::steady_clock;

// Every criterion below is a fixed, seeded configuration: same boxes, same
// corpora, same trial counts on every run. Budgets are wall-clock seconds
// and failing one fails the criterion even if the numerics pass.

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

TensorContext make_context(const std::string& system, int J, int dim,
                           std::int64_t lo_cells, std::int64_t hi_cells) {
  const DyadicGrid box{J, lo_cells, hi_cells, dim};
  const ScalingSystem sys =
      make_scaling_system(system, DyadicGrid{J, lo_cells, hi_cells, 1});
  const std::vector<ScalingSystem> axes(static_cast<std::size_t>(dim), sys);
  return make_tensor_context(axes, box);
}

// Unit boxes used throughout: haar on [-1,2)^d, db2 on [-3,4.5)^d unless a
// criterion narrows the range to fit its budget.
TensorContext haar_context(int J, int dim) {
  const std::int64_t s = std::int64_t{1} << J;
  return make_context("haar", J, dim, -s, 2 * s);
}

TensorContext db2_context(int J, int dim) {
  const std::int64_t s = std::int64_t{1} << J;
  return make_context("db2", J, dim, -3 * s, 9 * s / 2);
}

double sup_diff(const SampledFunction& a, const SampledFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    m = std::max(m, std::abs(a.samples[i] - b.samples[i]));
  return m;
}

void add_into(SampledFunction& acc, const SampledFunction& term) {
  for (std::size_t i = 0; i < acc.samples.size(); ++i)
    acc.samples[i] += term.samples[i];
}

// 1: ||Sf||_2 / ||f||_2 = 1 up to quadrature for band-limited interior
// functions, both systems, d = 1 and 2, full scale cap at J = 10.
Outcome ratio_one_body() {
  double worst = 0.0;
  int count = 0;
  auto run = [&](const TensorContext& ctx, std::uint64_t seed, int n,
                 const MultiIndex& cap) {
    XorShift64Star rng(seed);
    for (const SampledFunction& f : make_corpus(ctx, "bandlimited", n, 4, rng)) {
      const RatioRecord rec = lp_ratio(ctx, f, "c1", 2.0, cap);
      worst = std::max(worst, std::abs(rec.ratio - 1.0));
      ++count;
    }
  };
  const std::int64_t s = std::int64_t{1} << 10;
  run(haar_context(10, 1), 811, 3, MultiIndex{6});
  run(db2_context(10, 1), 812, 3, MultiIndex{6});
  run(haar_context(10, 2), 813, 2, MultiIndex{6, 6});
  run(make_context("db2", 10, 2, -3 * s, 7 * s / 2), 814, 1, MultiIndex{6, 6});
  Outcome o;
  o.pass = worst <= 1e-3;
  o.detail = "worst |ratio-1| " + fmt(worst) + " over " + std::to_string(count) +
             " band-limited functions";
  return o;
}

// 2: idempotency, nesting, detail annihilation and self-adjointness of the
// reproduction operators, sup-norm <= 1e-8 on 50 random functions.
Outcome projector_algebra_body() {
  double idem = 0.0, nest = 0.0, annih = 0.0, adjoint = 0.0;
  auto run = [&](const TensorContext& ctx, std::uint64_t seed,
                 const std::vector<MultiIndex>& idem_caps,
                 const std::vector<std::pair<MultiIndex, MultiIndex>>& nest_caps,
                 const std::vector<std::pair<MultiIndex, MultiIndex>>& annih_caps,
                 const MultiIndex& adj_cap) {
    XorShift64Star rng(seed);
    std::vector<SampledFunction> fs = make_corpus(ctx, "steps", 13, 0, rng);
    for (SampledFunction& f : make_corpus(ctx, "bumps", 12, 0, rng))
      fs.push_back(std::move(f));
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const SampledFunction& f = fs[i];
      const SampledFunction& g = fs[(i + 1) % fs.size()];
      for (const MultiIndex& k : idem_caps) {
        const SampledFunction once = project_nd(ctx, f, k);
        idem = std::max(idem, sup_diff(project_nd(ctx, once, k), once));
      }
      for (const auto& [j, k] : nest_caps) {
        const SampledFunction coarse = project_nd(ctx, f, j);
        nest = std::max(nest,
                        sup_diff(project_nd(ctx, project_nd(ctx, f, k), j), coarse));
      }
      for (const auto& [low, k] : annih_caps) {
        const SampledFunction inside = project_nd(ctx, f, low);
        annih = std::max(annih, sup_norm(detail_nd(ctx, inside, k)));
      }
      const Complex lhs = inner_product(project_nd(ctx, f, adj_cap), g);
      const Complex rhs = inner_product(f, project_nd(ctx, g, adj_cap));
      adjoint = std::max(adjoint, std::abs(lhs - rhs));
    }
  };
  run(haar_context(8, 1), 821, {{0}, {2}, {4}}, {{{1}, {3}}, {{2}, {4}}},
      {{{1}, {2}}, {{3}, {4}}}, {3});
  run(haar_context(7, 2), 822, {{0, 1}, {2, 3}}, {{{1, 2}, {3, 3}}},
      {{{1, 3}, {2, 3}}, {{3, 1}, {3, 2}}}, {2, 2});
  Outcome o;
  o.pass = idem <= 1e-8 && nest <= 1e-8 && annih <= 1e-8 && adjoint <= 1e-8;
  o.detail = "idem " + fmt(idem) + " nest " + fmt(nest) + " annih " + fmt(annih) +
             " adjoint " + fmt(adjoint);
  return o;
}

// 3: partial detail sums telescope to the reproduction at the cap, 1e-12
// sup-norm, every cap up to (6,6) in d = 2 and up to 6 in d = 1.
Outcome telescoping_body() {
  double worst = 0.0;
  auto run_1d = [&](const TensorContext& ctx, const std::string& gen, int scale,
                    std::uint64_t seed) {
    XorShift64Star rng(seed);
    for (const SampledFunction& f : make_corpus(ctx, gen, 2, scale, rng))
      for (int k = 0; k <= 6; ++k)
        worst = std::max(worst, sup_diff(partial_sum(ctx, f, MultiIndex{k}),
                                         project_nd(ctx, f, MultiIndex{k})));
  };
  run_1d(haar_context(10, 1), "steps", 0, 826);
  run_1d(db2_context(10, 1), "bandlimited", 4, 827);

  // d = 2 over all 49 caps: one lattice walk maintains the column prefix sums
  // col[k1] = sum of details over {0..k0} x {0..k1}, so after visiting
  // (k0, k1) the accumulator col[k1] equals the partial sum at that cap.
  const std::int64_t s = std::int64_t{1} << 10;
  const TensorContext ctx2 = make_context("haar", 10, 2, 0, s);
  SampledFunction f2 = SampledFunction::zeros(ctx2.box);
  XorShift64Star noise(828);
  for (Complex& z : f2.samples) z = Complex(2.0 * noise.uniform01() - 1.0, 0.0);

  std::vector<SampledFunction> col(7, SampledFunction::zeros(ctx2.box));
  SampledFunction row = SampledFunction::zeros(ctx2.box);
  for_each_detail(ctx2, f2, MultiIndex{6, 6},
                  [&](const MultiIndex& kappa, const SampledFunction& det) {
                    if (kappa[1] == 0)
                      std::fill(row.samples.begin(), row.samples.end(), Complex{});
                    add_into(row, det);
                    add_into(col[static_cast<std::size_t>(kappa[1])], row);
                    worst = std::max(
                        worst, sup_diff(col[static_cast<std::size_t>(kappa[1])],
                                        project_nd(ctx2, f2, kappa)));
                  });
  // the shipped d = 2 accumulator, spot-checked once
  worst = std::max(worst, sup_diff(partial_sum(ctx2, f2, MultiIndex{2, 3}),
                                   project_nd(ctx2, f2, MultiIndex{2, 3})));
  Outcome o;
  o.pass = worst <= 1e-12;
  o.detail = "worst telescoping gap " + fmt(worst) + " across 63 caps";
  return o;
}

// 4: factored detail equals the alternating corner-reproduction sum, 1e-10,
// all kappa in {0..3}^2 on 20 random functions.
Outcome factored_vs_corners_body() {
  double worst = 0.0;
  auto run = [&](const TensorContext& ctx, std::uint64_t seed, int n_steps,
                 int n_bumps) {
    XorShift64Star rng(seed);
    std::vector<SampledFunction> fs = make_corpus(ctx, "steps", n_steps, 0, rng);
    for (SampledFunction& f : make_corpus(ctx, "bumps", n_bumps, 0, rng))
      fs.push_back(std::move(f));
    for (const SampledFunction& f : fs)
      for (int k0 = 0; k0 <= 3; ++k0)
        for (int k1 = 0; k1 <= 3; ++k1) {
          const MultiIndex kappa{k0, k1};
          worst = std::max(worst, sup_diff(detail_nd(ctx, f, kappa, false),
                                           detail_nd(ctx, f, kappa, true)));
        }
  };
  run(haar_context(7, 2), 831, 8, 7);
  run(db2_context(7, 2), 832, 3, 2);
  Outcome o;
  o.pass = worst <= 1e-10;
  o.detail = "worst factored-vs-corner gap " + fmt(worst) +
             " over 20 functions x 16 scales";
  return o;
}

// 5: off-p2 square-function ratios stay inside [0.05, 20] with per-cell
// spread <= 25; the empirical two-sided constants are reported.
Outcome lp_bracket_body() {
  const double ps[] = {1.25, 1.5, 3.0, 4.0};
  double lo = 1e300, hi = 0.0, worst_spread = 0.0;
  auto run = [&](const TensorContext& ctx, std::uint64_t seed, int per_gen,
                 const MultiIndex& cap) {
    XorShift64Star rng(seed);
    std::vector<SampledFunction> fs = make_corpus(ctx, "steps", per_gen, 0, rng);
    for (SampledFunction& f : make_corpus(ctx, "bumps", per_gen, 0, rng))
      fs.push_back(std::move(f));
    for (SampledFunction& f : make_corpus(ctx, "bandlimited", per_gen, 3, rng))
      fs.push_back(std::move(f));
    // one square function per f serves every p in the cell
    std::vector<double> cell_min(4, 1e300), cell_max(4, 0.0);
    for (const SampledFunction& f : fs) {
      const SampledFunction sf = square_function(ctx, f, cap);
      for (int pi = 0; pi < 4; ++pi) {
        const double r = lp_norm(sf, ps[pi]) / lp_norm(f, ps[pi]);
        cell_min[pi] = std::min(cell_min[pi], r);
        cell_max[pi] = std::max(cell_max[pi], r);
      }
    }
    for (int pi = 0; pi < 4; ++pi) {
      lo = std::min(lo, cell_min[pi]);
      hi = std::max(hi, cell_max[pi]);
      worst_spread = std::max(worst_spread, cell_max[pi] / cell_min[pi]);
    }
  };
  run(haar_context(10, 1), 841, 2, MultiIndex{6});
  run(db2_context(10, 1), 842, 2, MultiIndex{6});
  run(haar_context(8, 2), 843, 1, MultiIndex{4, 4});
  run(db2_context(8, 2), 844, 1, MultiIndex{4, 4});
  Outcome o;
  o.pass = lo >= 0.05 && hi <= 20.0 && worst_spread <= 25.0;
  o.detail = "empirical constants [" + fmt(lo) + ", " + fmt(hi) +
             "], worst cell spread " + fmt(worst_spread);
  return o;
}

// 6: tensor sign sums are exact isometries at p = 2 (200 patterns) and stay
// within a factor-10 max/median band away from p = 2.
Outcome sign_sum_body() {
  const TensorContext ctx1 = haar_context(9, 1);
  XorShift64Star rng1(901);
  const SampledFunction f1 = make_corpus(ctx1, "steps", 1, 0, rng1)[0];
  const TensorContext ctx2 = haar_context(7, 2);
  XorShift64Star rng2(904);
  const SampledFunction f2 = make_corpus(ctx2, "steps", 1, 0, rng2)[0];

  double worst_p2 = 0.0;
  for (const SignTrialRecord& t :
       sign_sweep(ctx1, f1, 2.0, MultiIndex{5}, 120, 1001))
    worst_p2 = std::max(worst_p2, std::abs(t.ratio - 1.0));
  for (const SignTrialRecord& t :
       sign_sweep(ctx2, f2, 2.0, MultiIndex{3, 3}, 80, 1004))
    worst_p2 = std::max(worst_p2, std::abs(t.ratio - 1.0));

  double worst_band = 0.0;
  auto band = [&](const TensorContext& ctx, const SampledFunction& f, double p,
                  const MultiIndex& cap, int trials, std::uint64_t seed) {
    const SweepSummary s = summarize(sign_sweep(ctx, f, p, cap, trials, seed));
    worst_band = std::max(worst_band, s.max / s.median);
  };
  band(ctx1, f1, 4.0, MultiIndex{5}, 50, 1002);
  band(ctx1, f1, 1.25, MultiIndex{5}, 50, 1003);
  band(ctx2, f2, 4.0, MultiIndex{3, 3}, 40, 1005);
  Outcome o;
  o.pass = worst_p2 <= 1e-6 && worst_band <= 10.0;
  o.detail = "p=2 worst |ratio-1| " + fmt(worst_p2) +
             " over 200 patterns, worst max/median " + fmt(worst_band);
  return o;
}

// 7: stopping-time decomposition verifies on 100 random step functions over
// five threshold decades, plus the known split of an indicator.
Outcome cz_body() {
  const std::int64_t s6 = std::int64_t{1} << 6;
  const DyadicGrid gold_box{6, 0, 4 * s6, 1};
  SampledFunction gold = SampledFunction::zeros(gold_box);
  for (std::int64_t i = 0; i < s6; ++i)
    gold.samples[static_cast<std::size_t>(i)] = 1.0;
  const CZDecomposition gdec = cz_decompose(gold, 0.25);
  const bool gold_ok = gdec.selected.size() == 1 &&
                       gdec.selected[0] == DyadicInterval{-1, 0} &&
                       verify_cz(gdec, gold).pass();

  const std::int64_t s8 = std::int64_t{1} << 8;
  const TensorContext ctx = make_context("haar", 8, 1, 0, 4 * s8);
  XorShift64Star rng(941);
  int verified = 0, total = 0;
  bool all_pass = true;
  for (const SampledFunction& f : make_corpus(ctx, "steps", 100, 0, rng)) {
    const double base = lp_norm(f, 1.0) / 4.0;  // box measure is 4
    if (!(base > 0.0)) continue;
    for (int e = -2; e <= 2; ++e) {
      const double alpha = base * std::pow(10.0, e);
      ++total;
      if (verify_cz(cz_decompose(f, alpha), f).pass())
        ++verified;
      else
        all_pass = false;
    }
  }
  Outcome o;
  o.pass = gold_ok && all_pass && total == 500;
  o.detail = std::to_string(verified) + "/" + std::to_string(total) +
             " verified, indicator stop " + (gold_ok ? "exact" : "WRONG");
  return o;
}

// Direct enumeration written independently of the library routine: same
// frozen order (atoms ascending, LSB-first negation), so agreement must be
// bitwise.
double enumerated_moment(const std::vector<double>& a, double p) {
  const std::uint64_t atoms = std::uint64_t{1} << a.size();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < atoms; ++mask) {
    double walk = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
      walk += ((mask >> k) & 1u) != 0 ? -a[k] : a[k];
    total += std::pow(std::abs(walk), p);
  }
  return total / static_cast<double>(atoms);
}

// 8: exhaustive sign moments match the oracle bitwise for coefficient
// vectors of size 1..10, and the p = 2 moment is the l2 norm to 1e-12.
Outcome khintchine_body() {
  XorShift64Star rng(881);
  bool bitwise = true;
  double worst_p2 = 0.0;
  int cases = 0;
  for (int n = 1; n <= 10; ++n) {
    std::vector<double> a(static_cast<std::size_t>(n));
    for (double& v : a) v = 2.0 * rng.uniform01() - 1.0;
    for (double p : {1.25, 2.0, 4.0}) {
      if (khintchine_moment(a, p) != enumerated_moment(a, p)) bitwise = false;
      ++cases;
    }
    double ss = 0.0;
    for (double v : a) ss += v * v;
    const double ratio = std::sqrt(khintchine_moment(a, 2.0)) / std::sqrt(ss);
    worst_p2 = std::max(worst_p2, std::abs(ratio - 1.0));
  }
  Outcome o;
  o.pass = bitwise && worst_p2 <= 1e-12;
  o.detail = std::string(bitwise ? "bitwise equal" : "MISMATCH") + " in " +
             std::to_string(cases) + " cases, worst p=2 |ratio-1| " + fmt(worst_p2);
  return o;
}

// Exact weak-type functional for one spike: alphas just below every distinct
// level of |Tf|, so each level set is hit exactly.
double spike_weak_constant(const TensorContext& ctx, const SampledFunction& f,
                           const SignPattern& signs, const MultiIndex& cap) {
  const SampledFunction tf = sign_sum(ctx, f, signs, cap);
  std::set<double> levels;
  for (const Complex& z : tf.samples) {
    const double v = std::abs(z);
    if (v > 0.0) levels.insert(v);
  }
  std::vector<double> alphas;
  for (double l : levels) alphas.push_back(std::nextafter(l, 0.0));
  double worst = 0.0;
  for (const auto& [alpha, value] : weak11_check(ctx, f, signs, cap, alphas))
    worst = std::max(worst, value);
  return worst;
}

// 9: the weak (1,1) functional of signed detail sums on unit-mass spikes is
// finite and varies at most 2x as the spike narrows from m = 0 to 8.
Outcome weak_type_body() {
  const TensorContext ctx = haar_context(10, 1);
  SignPattern alternating;
  alternating.axis_signs.push_back({});
  for (int k = 0; k <= 6; ++k)
    alternating.axis_signs[0].push_back(k % 2 == 0 ? 1 : -1);
  double lo = 1e300, hi = 0.0;
  for (int m = 0; m <= 8; ++m) {
    const double c =
        spike_weak_constant(ctx, unit_spike(ctx.box, m), alternating, MultiIndex{6});
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  Outcome o;
  o.pass = lo > 0.0 && std::isfinite(hi) && hi / lo <= 2.0;
  o.detail = "weak constants in [" + fmt(lo) + ", " + fmt(hi) + "], spread " +
             fmt(hi / lo) + " across m=0..8";
  return o;
}

// 10: reconstruction error is non-increasing in the cap and reaches 1e-3
// relative at the top cap for partition-limited functions.
Outcome reconstruction_body() {
  bool monotone = true;
  double worst_final = 0.0;
  auto run = [&](const TensorContext& ctx, std::uint64_t seed, int count,
                 int top, bool diagonal) {
    XorShift64Star rng(seed);
    for (const SampledFunction& f : make_corpus(ctx, "steps", count, 0, rng)) {
      const double nf = lp_norm(f, 2.0);
      double prev = 1e300;
      double err = 0.0;
      for (int t = 0; t <= top; ++t) {
        const MultiIndex cap =
            diagonal ? MultiIndex{t, t} : MultiIndex{t};
        SampledFunction res = project_nd(ctx, f, cap);
        for (std::size_t i = 0; i < res.samples.size(); ++i)
          res.samples[i] -= f.samples[i];
        err = lp_norm(res, 2.0);
        if (err > prev + 1e-12 * nf) monotone = false;
        prev = err;
      }
      worst_final = std::max(worst_final, err / nf);
    }
  };
  run(haar_context(10, 1), 951, 2, 6, false);
  run(haar_context(9, 2), 952, 1, 5, true);
  Outcome o;
  o.pass = monotone && worst_final <= 1e-3;
  o.detail = std::string(monotone ? "non-increasing" : "NOT MONOTONE") +
             ", worst final relative error " + fmt(worst_final);
  return o;
}

struct Entry {
  int number;
  const char* name;
  double budget_seconds;
  Outcome (*body)();
};

constexpr Entry kEntries[] = {
    {1, "square-function-isometry", 30.0, ratio_one_body},
    {2, "projector-algebra", 60.0, projector_algebra_body},
    {3, "detail-telescoping", 10.0, telescoping_body},
    {4, "factored-vs-corner-detail", 20.0, factored_vs_corners_body},
    {5, "lp-ratio-bracket", 120.0, lp_bracket_body},
    {6, "sign-sum-isometry", 120.0, sign_sum_body},
    {7, "stopping-decomposition", 10.0, cz_body},
    {8, "sign-moment-enumeration", 5.0, khintchine_body},
    {9, "weak-type-spikes", 30.0, weak_type_body},
    {10, "reconstruction-decay", 30.0, reconstruction_body},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& out) {
  std::vector<CriterionResult> results;
  for (const Entry& e : kEntries) {
    CriterionResult r;
    r.number = e.number;
    r.name = e.name;
    const auto t0 = Clock::now();
    Outcome body;
    try {
      body = e.body();
    } catch (const std::exception& ex) {
      body.pass = false;
      body.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    r.pass = body.pass && r.seconds <= e.budget_seconds;
    r.detail = body.detail;
    if (body.pass && !r.pass) r.detail += " (over budget)";
    char timing[48];
    std::snprintf(timing, sizeof timing, " [%.2fs <= %.0fs]", r.seconds,
                  e.budget_seconds);
    out << (r.pass ? "PASS" : "FAIL") << ' ' << r.number << ' ' << r.name
        << timing << ' ' << r.detail << std::endl;
    results.push_back(r);
  }
  return results;
}

}  // namespace mrproj
