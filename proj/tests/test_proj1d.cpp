#include <cmath>

#include "doctest.h"
#include "mrproj/proj1d.hpp"
#include "mrproj/rng.hpp"
#include "mrproj/scaling.hpp"

using namespace mrproj;

namespace {

ProjectorContext unit_haar(int J) {
  const DyadicGrid box{J, 0, std::int64_t{1} << J, 1};
  return make_projector_context(haar_system(J, box), box);
}

// f(x) = x sampled at the midpoints of [0, 1)
SampledFunction ramp(const DyadicGrid& box) {
  SampledFunction f = SampledFunction::zeros(box);
  for (std::size_t i = 0; i < f.samples.size(); ++i)
    f.samples[i] = (static_cast<double>(i) + 0.5) * box.step();
  return f;
}

}  // namespace

TEST_CASE("context records resolution cap and real-sample fast path") {
  const ProjectorContext ctx = unit_haar(8);
  CHECK_EQ(ctx.kappa_max, 8 - kAccuracyMargin);
  CHECK(ctx.phi_real);
  CHECK(ctx.dual_real);
  const std::int64_t s = std::int64_t{1} << 9;
  const DyadicGrid wrong_J{9, 0, s, 1};
  CHECK_THROWS_AS(make_projector_context(haar_system(8, DyadicGrid{8, 0, 256, 1}), wrong_J),
                  resolution_error);
}

TEST_CASE("averaging coefficients of the ramp are exact dyadic rationals") {
  // All sums below stay inside exact double arithmetic: int_0^1 x dx = 1/2
  // and the two half-cell averages are 1/4 and 3/4 by the midpoint rule.
  const ProjectorContext ctx = unit_haar(8);
  const SampledFunction f = ramp(ctx.box);

  const auto c0 = coefficients(ctx, f, 0);
  REQUIRE_EQ(c0.size(), 1);
  CHECK_EQ(c0.at(0), Complex{0.5});

  const auto c1 = coefficients(ctx, f, 1);
  REQUIRE_EQ(c1.size(), 2);
  CHECK_EQ(c1.at(0), Complex{0.25});
  CHECK_EQ(c1.at(1), Complex{0.75});
}

TEST_CASE("reproduction and detail of the ramp match hand values") {
  const ProjectorContext ctx = unit_haar(8);
  const SampledFunction f = ramp(ctx.box);

  const SampledFunction p0 = project(ctx, f, 0);
  for (const Complex& z : p0.samples) CHECK_EQ(z, Complex{0.5});

  const SampledFunction d1 = detail(ctx, f, 1);
  for (std::size_t i = 0; i < d1.samples.size(); ++i)
    CHECK_EQ(d1.samples[i], Complex{i < 128 ? -0.25 : 0.25});

  // the coarsest detail is the coarsest reproduction
  const SampledFunction d0 = detail(ctx, f, 0);
  for (std::size_t i = 0; i < d0.samples.size(); ++i)
    CHECK_EQ(d0.samples[i], p0.samples[i]);
}

TEST_CASE("piecewise-constant functions reproduce exactly at their scale") {
  const ProjectorContext ctx = unit_haar(8);
  SampledFunction f = SampledFunction::zeros(ctx.box);
  for (std::size_t i = 0; i < 128; ++i) f.samples[i] = 1.0;  // chi_[0,1/2)

  const SampledFunction p1 = project(ctx, f, 1);
  for (std::size_t i = 0; i < 256; ++i) CHECK_EQ(p1.samples[i], f.samples[i]);

  const SampledFunction d1 = detail(ctx, f, 1);
  for (std::size_t i = 0; i < 256; ++i)
    CHECK_EQ(d1.samples[i], Complex{i < 128 ? 0.5 : -0.5});
}

TEST_CASE("windowed overloads return bitwise-identical samples") {
  const std::int64_t s = std::int64_t{1} << 9;
  const DyadicGrid box{9, -s, 4 * s, 1};  // [-1, 4) holds the db2 support [0, 3]
  const ProjectorContext ctx = make_projector_context(make_scaling_system("db2", box), box);
  SampledFunction f = SampledFunction::zeros(box);
  XorShift64Star rng(19);
  for (std::size_t i = 200; i < 1000; ++i) f.samples[i] = 2.0 * rng.uniform01() - 1.0;

  std::int64_t a = 0, b = 0;
  REQUIRE(support_bounds(f, a, b));
  const SupportWindow w{a, b};
  const SampledFunction plain = project(ctx, f, 3);
  const SampledFunction windowed = project(ctx, f, 3, w);
  for (std::size_t i = 0; i < plain.samples.size(); ++i)
    CHECK_EQ(plain.samples[i], windowed.samples[i]);

  const SampledFunction dp = detail(ctx, f, 3);
  const SampledFunction dw = detail(ctx, f, 3, w);
  for (std::size_t i = 0; i < dp.samples.size(); ++i) CHECK_EQ(dp.samples[i], dw.samples[i]);
}

TEST_CASE("scale and domain misuse raise typed errors") {
  const ProjectorContext ctx = unit_haar(8);
  const SampledFunction f = ramp(ctx.box);
  CHECK_THROWS_AS(project(ctx, f, 5), resolution_error);   // above J - margin
  CHECK_THROWS_AS(project(ctx, f, -1), resolution_error);
  CHECK_THROWS_AS(detail(ctx, f, 7), resolution_error);
  const SampledFunction g = SampledFunction::zeros(DyadicGrid{8, 0, 128, 1});
  CHECK_THROWS_AS(project(ctx, g, 2), structural_error);   // wrong box
}

TEST_CASE("reproduction is self-adjoint under the midpoint pairing") {
  const ProjectorContext ctx = unit_haar(8);
  XorShift64Star rng(23);
  SampledFunction f = SampledFunction::zeros(ctx.box);
  SampledFunction g = SampledFunction::zeros(ctx.box);
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    f.samples[i] = Complex(rng.uniform01(), rng.uniform01() - 0.5);
    g.samples[i] = Complex(rng.uniform01() - 0.5, rng.uniform01());
  }
  const Complex lhs = inner_product(project(ctx, f, 2), g);
  const Complex rhs = inner_product(f, project(ctx, g, 2));
  CHECK_LE(std::abs(lhs - rhs), 1e-14);
}
