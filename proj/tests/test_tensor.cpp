#include <cmath>
#include <vector>

#include "doctest.h"
#include "mrproj/corpus.hpp"
#include "mrproj/rng.hpp"
#include "mrproj/scaling.hpp"
#include "mrproj/tensor.hpp"

using namespace mrproj;

namespace {

TensorContext haar2(int J) {
  const std::int64_t s = std::int64_t{1} << J;
  const DyadicGrid box{J, -s, 2 * s, 2};
  const ScalingSystem sys = haar_system(J, box.axis());
  return make_tensor_context({sys, sys}, box);
}

TensorContext db2_ctx(int J, int dim) {
  const std::int64_t s = std::int64_t{1} << J;
  const DyadicGrid box{J, -3 * s, 9 * s / 2, dim};
  const ScalingSystem sys = make_scaling_system("db2", box.axis());
  return make_tensor_context(std::vector<ScalingSystem>(static_cast<std::size_t>(dim), sys), box);
}

double sup_diff(const SampledFunction& a, const SampledFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    m = std::max(m, std::abs(a.samples[i] - b.samples[i]));
  return m;
}

}  // namespace

TEST_CASE("tensor context construction validates its inputs") {
  const DyadicGrid box{6, 0, 64, 2};
  const ScalingSystem sys = haar_system(6, box.axis());
  CHECK_THROWS_AS(make_tensor_context({sys}, box), structural_error);  // one per axis
  const DyadicGrid four{6, 0, 64, 4};
  CHECK_THROWS_AS(make_tensor_context({sys, sys, sys, sys}, four), structural_error);
  const TensorContext ctx = make_tensor_context({sys, sys}, box);
  CHECK_EQ(ctx.dim(), 2);
  CHECK_EQ(ctx.axes.size(), 2);
}

TEST_CASE("reproduction of a separable function factors across axes") {
  const TensorContext ctx = haar2(7);
  const DyadicGrid axis = ctx.box.axis();
  const std::size_t n = static_cast<std::size_t>(axis.extent());

  XorShift64Star rng(31);
  SampledFunction g = SampledFunction::zeros(axis);
  SampledFunction h = SampledFunction::zeros(axis);
  for (std::size_t i = 0; i < n; ++i) {
    g.samples[i] = 2.0 * rng.uniform01() - 1.0;
    h.samples[i] = 2.0 * rng.uniform01() - 1.0;
  }
  SampledFunction f = SampledFunction::zeros(ctx.box);
  for (std::size_t iy = 0; iy < n; ++iy)
    for (std::size_t ix = 0; ix < n; ++ix)
      f.samples[ix + n * iy] = g.samples[ix] * h.samples[iy];

  const SampledFunction pg = project(ctx.axes[0], g, 2);
  const SampledFunction ph = project(ctx.axes[1], h, 1);
  const SampledFunction pf = project_nd(ctx, f, MultiIndex{2, 1});
  double worst = 0.0;
  for (std::size_t iy = 0; iy < n; ++iy)
    for (std::size_t ix = 0; ix < n; ++ix)
      worst = std::max(worst, std::abs(pf.samples[ix + n * iy] -
                                       pg.samples[ix] * ph.samples[iy]));
  CHECK_LE(worst, 1e-13);
}

TEST_CASE("axis lift touches only its own axis") {
  const TensorContext ctx = haar2(6);
  XorShift64Star rng(37);
  SampledFunction f = SampledFunction::zeros(ctx.box);
  for (Complex& z : f.samples) z = 2.0 * rng.uniform01() - 1.0;

  // projecting axis 0 then axis 1 equals the joint reproduction
  const AxisOp p2{AxisOp::kProject, 2};
  const AxisOp p1{AxisOp::kProject, 1};
  const SampledFunction staged = apply_axis(ctx, 1, p1, apply_axis(ctx, 0, p2, f));
  CHECK_LE(sup_diff(staged, project_nd(ctx, f, MultiIndex{2, 1})), 0.0);
}

TEST_CASE("coarsest detail block equals the coarsest reproduction") {
  const TensorContext ctx = haar2(6);
  XorShift64Star rng(41);
  SampledFunction f = SampledFunction::zeros(ctx.box);
  for (Complex& z : f.samples) z = rng.uniform01();
  CHECK_LE(sup_diff(detail_nd(ctx, f, MultiIndex{0, 0}),
                    project_nd(ctx, f, MultiIndex{0, 0})),
           0.0);
}

TEST_CASE("detail sums telescope to the reproduction at the cap") {
  const TensorContext ctx = haar2(7);
  XorShift64Star rng(43);
  SampledFunction f = SampledFunction::zeros(ctx.box);
  for (Complex& z : f.samples) z = 2.0 * rng.uniform01() - 1.0;
  CHECK_LE(sup_diff(partial_sum(ctx, f, MultiIndex{2, 3}),
                    project_nd(ctx, f, MultiIndex{2, 3})),
           1e-12);
}

TEST_CASE("lattice walk visits row-major with the last axis fastest") {
  const TensorContext ctx = haar2(5);
  SampledFunction f = SampledFunction::zeros(ctx.box);
  f.samples[10] = 1.0;
  std::vector<MultiIndex> seen;
  SampledFunction fold = SampledFunction::zeros(ctx.box);
  for_each_detail(ctx, f, MultiIndex{1, 1},
                  [&](const MultiIndex& kappa, const SampledFunction& det) {
                    seen.push_back(kappa);
                    for (std::size_t i = 0; i < fold.samples.size(); ++i)
                      fold.samples[i] += det.samples[i];
                  });
  const std::vector<MultiIndex> expect{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK_EQ(seen, expect);

  // the shipped accumulator is exactly this fold
  const SampledFunction ps = partial_sum(ctx, f, MultiIndex{1, 1});
  for (std::size_t i = 0; i < ps.samples.size(); ++i)
    CHECK_EQ(fold.samples[i], ps.samples[i]);
}

TEST_CASE("fused energy sweep reproduces the naive fold bitwise") {
  const TensorContext ctx = db2_ctx(7, 2);
  XorShift64Star rng(47);
  const SampledFunction f = make_corpus(ctx, "bumps", 1, 0, rng)[0];
  const MultiIndex cap{2, 2};

  std::vector<double> fold(f.samples.size(), 0.0);
  for_each_detail(ctx, f, cap, [&](const MultiIndex&, const SampledFunction& det) {
    for (std::size_t i = 0; i < fold.size(); ++i) fold[i] += std::norm(det.samples[i]);
  });
  const std::vector<double> fused = detail_energy(ctx, f, cap);
  REQUIRE_EQ(fused.size(), fold.size());
  for (std::size_t i = 0; i < fold.size(); ++i) CHECK_EQ(fused[i], fold[i]);
}

TEST_CASE("factored detail agrees with the corner-reproduction assembly") {
  const TensorContext ctx = db2_ctx(6, 2);
  XorShift64Star rng(53);
  const SampledFunction f = make_corpus(ctx, "steps", 1, 0, rng)[0];
  for (const MultiIndex& kappa : {MultiIndex{0, 2}, MultiIndex{2, 0}, MultiIndex{1, 2}})
    CHECK_LE(sup_diff(detail_nd(ctx, f, kappa, false), detail_nd(ctx, f, kappa, true)),
             1e-10);
}

TEST_CASE("tensor sign patterns multiply per axis and reject short tables") {
  SignPattern sp;
  sp.axis_signs = {{+1, -1, +1}, {-1, -1, +1}};
  CHECK_EQ(sp.at(MultiIndex{0, 0}), -1);
  CHECK_EQ(sp.at(MultiIndex{1, 1}), +1);
  CHECK_EQ(sp.at(MultiIndex{1, 2}), -1);
  CHECK_THROWS_AS(sp.at(MultiIndex{3, 0}), structural_error);
  CHECK_THROWS_AS(sp.at(MultiIndex{0, 0, 0}), structural_error);
}
