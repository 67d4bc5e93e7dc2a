#include <cmath>

#include "doctest.h"
#include "mrproj/corpus.hpp"
#include "mrproj/rng.hpp"
#include "mrproj/scaling.hpp"
#include "mrproj/tensor.hpp"

using namespace mrproj;

namespace {

TensorContext ctx_for(const std::string& spec, int J, int dim) {
  const std::int64_t s = std::int64_t{1} << J;
  const DyadicGrid box = spec == "haar" ? DyadicGrid{J, -s, 2 * s, dim}
                                        : DyadicGrid{J, -3 * s, 9 * s / 2, dim};
  const ScalingSystem sys = make_scaling_system(spec, box.axis());
  return make_tensor_context(std::vector<ScalingSystem>(static_cast<std::size_t>(dim), sys), box);
}

}  // namespace

TEST_CASE("interior margin is the widest primal support") {
  CHECK_EQ(interior_margin(ctx_for("haar", 7, 1)), 1.0);
  CHECK_EQ(interior_margin(ctx_for("db2", 7, 1)), 3.0);   // support [0, 3]
  CHECK_EQ(interior_margin(ctx_for("db2", 7, 2)), 3.0);
}

TEST_CASE("generators are deterministic in the stream state") {
  const TensorContext ctx = ctx_for("haar", 7, 2);
  for (const char* gen : {"box", "steps", "bumps", "spikes"}) {
    XorShift64Star a(101), b(101);
    const auto fa = make_corpus(ctx, gen, 3, 0, a);
    const auto fb = make_corpus(ctx, gen, 3, 0, b);
    REQUIRE_EQ(fa.size(), 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < fa[i].samples.size(); ++j)
        CHECK_EQ(fa[i].samples[j], fb[i].samples[j]);
  }
}

TEST_CASE("every generator produces nonzero functions on the context box") {
  const TensorContext ctx = ctx_for("db2", 7, 1);
  XorShift64Star rng(103);
  for (const char* gen : {"box", "steps", "bumps", "spikes", "bandlimited"}) {
    for (const SampledFunction& f : make_corpus(ctx, gen, 4, 3, rng)) {
      CHECK_EQ(f.grid, ctx.box);
      CHECK_GT(sup_norm(f), 0.0);
    }
  }
  CHECK_THROWS_AS(make_corpus(ctx, "perlin", 1, 0, rng), structural_error);
  CHECK_THROWS_AS(make_corpus(ctx, "box", 0, 0, rng), structural_error);
}

TEST_CASE("band-limited functions reproduce at their generating scale") {
  // haar: the generator output is piecewise constant on scale-3 cells, so
  // reproduction at cap 3 is exact up to rounding
  const TensorContext hc = ctx_for("haar", 8, 1);
  XorShift64Star rng(107);
  for (const SampledFunction& f : make_corpus(hc, "bandlimited", 3, 3, rng)) {
    const SampledFunction p = project_nd(hc, f, MultiIndex{3});
    double worst = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i)
      worst = std::max(worst, std::abs(p.samples[i] - f.samples[i]));
    CHECK_LE(worst, 1e-12);
  }
  // db2: exact in L2 but the midpoint rule leaves a quadrature residual
  const TensorContext dc = ctx_for("db2", 9, 1);
  for (const SampledFunction& f : make_corpus(dc, "bandlimited", 3, 3, rng)) {
    const SampledFunction p = project_nd(dc, f, MultiIndex{3});
    double worst = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i)
      worst = std::max(worst, std::abs(p.samples[i] - f.samples[i]));
    CHECK_LE(worst, 1e-3 * sup_norm(f));
  }
}

TEST_CASE("unit spikes have unit mass at every width") {
  const DyadicGrid box1{8, -256, 512, 1};
  for (int m : {0, 3, 8}) {
    const SampledFunction f = unit_spike(box1, m);
    CHECK_LE(std::abs(lp_norm(f, 1.0) - 1.0), 1e-12);
    CHECK_EQ(sup_norm(f), std::ldexp(1.0, m));
  }
  const DyadicGrid box2{6, -64, 128, 2};
  const SampledFunction g = unit_spike(box2, 2);
  CHECK_LE(std::abs(lp_norm(g, 1.0) - 1.0), 1e-12);
  CHECK_EQ(sup_norm(g), 16.0);  // 2^(m d)
  CHECK_THROWS_AS(unit_spike(box1, 9), resolution_error);   // narrower than a cell
  CHECK_THROWS_AS(unit_spike(DyadicGrid{8, 128, 512, 1}, 0), structural_error);
}
