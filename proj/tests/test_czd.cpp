#include <cmath>

#include "doctest.h"
#include "mrproj/corpus.hpp"
#include "mrproj/czd.hpp"
#include "mrproj/rng.hpp"
#include "mrproj/scaling.hpp"

using namespace mrproj;

namespace {

// chi_[0,1) on [0, 4)
SampledFunction indicator(int J) {
  const std::int64_t s = std::int64_t{1} << J;
  SampledFunction f = SampledFunction::zeros(DyadicGrid{J, 0, 4 * s, 1});
  for (std::int64_t i = 0; i < s; ++i) f.samples[static_cast<std::size_t>(i)] = 1.0;
  return f;
}

}  // namespace

TEST_CASE("indicator at level one quarter stops on the doubled interval") {
  // Averages along [0,4) -> [0,2) -> ... : the first strict exceedance of
  // 1/4 happens on [0,2), written as kappa = -1, nu = 0. The tie on [0,4)
  // itself must not select.
  const SampledFunction f = indicator(6);
  const CZDecomposition dec = cz_decompose(f, 0.25);
  REQUIRE_EQ(dec.selected.size(), 1);
  CHECK_EQ(dec.selected[0], DyadicInterval{-1, 0});
  REQUIRE_EQ(dec.bad_parts.size(), 1);

  // good is the average 1/2 on the selected interval, f elsewhere
  const std::int64_t s = std::int64_t{1} << 6;
  for (std::int64_t i = 0; i < 4 * s; ++i) {
    const Complex expect{i < 2 * s ? 0.5 : 0.0};
    CHECK_EQ(dec.good.samples[static_cast<std::size_t>(i)], expect);
  }
  CHECK(verify_cz(dec, f).pass());
}

TEST_CASE("a level above the sup selects nothing") {
  const SampledFunction f = indicator(6);
  const CZDecomposition dec = cz_decompose(f, 8.0);
  CHECK(dec.selected.empty());
  CHECK(dec.bad_parts.empty());
  for (std::size_t i = 0; i < f.samples.size(); ++i)
    CHECK_EQ(dec.good.samples[i], f.samples[i]);
  CHECK(verify_cz(dec, f).pass());
}

TEST_CASE("split reassembles the function and bad parts have zero mean") {
  const std::int64_t s = std::int64_t{1} << 7;
  const DyadicGrid box{7, 0, 4 * s, 1};
  const ScalingSystem sys = haar_system(7, DyadicGrid{7, 0, 4 * s, 1});
  const TensorContext ctx = make_tensor_context({sys}, box);
  XorShift64Star rng(61);
  for (const SampledFunction& f : make_corpus(ctx, "steps", 5, 0, rng)) {
    const double base = lp_norm(f, 1.0) / 4.0;
    if (!(base > 0.0)) continue;
    const CZDecomposition dec = cz_decompose(f, base);

    SampledFunction sum = dec.good;
    for (const SampledFunction& bad : dec.bad_parts)
      for (std::size_t i = 0; i < sum.samples.size(); ++i)
        sum.samples[i] += bad.samples[i];
    double worst = 0.0;
    for (std::size_t i = 0; i < sum.samples.size(); ++i)
      worst = std::max(worst, std::abs(sum.samples[i] - f.samples[i]));
    CHECK_LE(worst, 1e-12);

    for (const SampledFunction& bad : dec.bad_parts) {
      Complex mass{};
      for (const Complex& z : bad.samples) mass += z;
      CHECK_LE(std::abs(mass) * box.cell_measure(), 1e-12);
    }
  }
}

TEST_CASE("verification brackets every selected average in (alpha, 2 alpha]") {
  const SampledFunction f = indicator(6);
  const CzReport rep = verify_cz(cz_decompose(f, 0.25), f);
  CHECK(rep.small_off_union.pass);
  CHECK(rep.total_length.pass);
  CHECK(rep.averages_bracketed.pass);
  CHECK(rep.bad_parts_mean_zero.pass);
  CHECK(rep.good_bounded.pass);
  // selected length 2 against ||f||_1 / alpha = 4
  CHECK_LE(rep.total_length.measured, 0.0);
}

TEST_CASE("decomposition rejects flat misuse") {
  const SampledFunction f = indicator(5);
  CHECK_THROWS_AS(cz_decompose(f, 0.0), structural_error);
  CHECK_THROWS_AS(cz_decompose(f, -1.0), structural_error);
  const SampledFunction g = SampledFunction::zeros(DyadicGrid{5, 0, 32, 2});
  CHECK_THROWS_AS(cz_decompose(g, 1.0), structural_error);
}
