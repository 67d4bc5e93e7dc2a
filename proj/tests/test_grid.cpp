#include <cmath>
#include <sstream>

#include "doctest.h"
#include "mrproj/grid.hpp"
#include "mrproj/rng.hpp"

using namespace mrproj;

TEST_CASE("grid geometry is exact dyadic arithmetic") {
  const DyadicGrid g{3, -8, 8, 2};
  CHECK_EQ(g.step(), 0.125);
  CHECK_EQ(g.extent(), 16);
  CHECK_EQ(g.cells(), 256);
  CHECK_EQ(g.cell_measure(), 0.125 * 0.125);
  CHECK_EQ(g.axis(), DyadicGrid{3, -8, 8, 1});
}

TEST_CASE("grid validation rejects malformed boxes") {
  CHECK_THROWS_AS(validate_grid(DyadicGrid{53, 0, 1, 1}), structural_error);
  CHECK_THROWS_AS(validate_grid(DyadicGrid{-1, 0, 1, 1}), structural_error);
  CHECK_THROWS_AS(validate_grid(DyadicGrid{4, 5, 5, 1}), structural_error);
  CHECK_THROWS_AS(validate_grid(DyadicGrid{4, 0, 1, 0}), structural_error);
  CHECK_NOTHROW(validate_grid(DyadicGrid{0, -1, 1, 3}));
}

TEST_CASE("zeros allocates the full flat layout") {
  const DyadicGrid g{4, 0, 16, 2};
  const SampledFunction f = SampledFunction::zeros(g);
  CHECK_EQ(f.grid, g);
  CHECK_EQ(f.samples.size(), 256);
  for (const Complex& z : f.samples) CHECK_EQ(z, Complex{});
}

TEST_CASE("midpoint pairing and norms are exact on indicators") {
  const DyadicGrid g{4, 0, 32, 1};  // [0, 2)
  SampledFunction one = SampledFunction::zeros(g);
  for (Complex& z : one.samples) z = 1.0;
  CHECK_EQ(inner_product(one, one), Complex{2.0});
  CHECK_EQ(lp_norm(one, 2.0), std::sqrt(2.0));
  CHECK_EQ(lp_norm(one, 1.0), 2.0);
  CHECK_EQ(sup_norm(one), 1.0);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_EQ(lp_norm(one, inf), sup_norm(one));
  CHECK_THROWS_AS(lp_norm(one, 0.5), std::domain_error);
}

TEST_CASE("dilate_translate is a stride lookup with no interpolation") {
  const DyadicGrid g{6, 0, 64, 1};  // [0, 1)
  SampledFunction phi = SampledFunction::zeros(g);
  for (Complex& z : phi.samples) z = 1.0;  // chi_[0,1)

  // phi(2x - 1) = chi on [1/2, 1)
  const SampledFunction shifted = dilate_translate(phi, 1, 1, g);
  for (std::size_t i = 0; i < 64; ++i)
    CHECK_EQ(shifted.samples[i], Complex{i < 32 ? 0.0 : 1.0});

  // stride finer than the accuracy margin allows
  CHECK_THROWS_AS(dilate_translate(phi, 3, 0, g), resolution_error);
  CHECK_THROWS_AS(dilate_translate(phi, -1, 0, g), resolution_error);
}

TEST_CASE("support bounds are tight and empty-aware") {
  const DyadicGrid g{4, -16, 16, 1};
  SampledFunction f = SampledFunction::zeros(g);
  std::int64_t a = 7, b = 7;
  CHECK_FALSE(support_bounds(f, a, b));
  CHECK_EQ(a, 0);
  CHECK_EQ(b, 0);
  f.samples[5] = 1.0;   // absolute fine index -16 + 5 = -11
  f.samples[20] = 2.0;  // absolute fine index 4
  CHECK(support_bounds(f, a, b));
  CHECK_EQ(a, -11);
  CHECK_EQ(b, 5);
}

TEST_CASE("embedding pads with zeros and rejects shrinking") {
  const DyadicGrid g{3, 0, 8, 1};
  SampledFunction f = SampledFunction::zeros(g);
  for (std::size_t i = 0; i < 8; ++i) f.samples[i] = static_cast<double>(i + 1);
  const SampledFunction wide = embedded(f, -8, 16);
  CHECK_EQ(wide.grid.extent(), 24);
  CHECK_EQ(wide.samples[7], Complex{});
  CHECK_EQ(wide.samples[8], Complex{1.0});
  CHECK_EQ(wide.samples[15], Complex{8.0});
  CHECK_EQ(wide.samples[16], Complex{});
  CHECK_THROWS_AS(embedded(f, 1, 8), structural_error);
}

TEST_CASE("accumulate is samplewise fused add") {
  const DyadicGrid g{2, 0, 4, 1};
  SampledFunction acc = SampledFunction::zeros(g);
  SampledFunction x = SampledFunction::zeros(g);
  x.samples = {1.0, 2.0, 3.0, 4.0};
  accumulate(acc, x, Complex{0.0, 1.0});
  CHECK_EQ(acc.samples[3], Complex(0.0, 4.0));
  accumulate(acc, x, Complex{-1.0, 0.0});
  CHECK_EQ(acc.samples[3], Complex(-4.0, 4.0));
}

TEST_CASE("function serialization round-trips bitwise") {
  const DyadicGrid g{5, -3, 9, 1};
  SampledFunction f = SampledFunction::zeros(g);
  XorShift64Star rng(7);
  for (Complex& z : f.samples)
    z = Complex(2.0 * rng.uniform01() - 1.0, 2.0 * rng.uniform01() - 1.0);
  std::stringstream ss;
  write_function(ss, f);
  const SampledFunction back = read_function(ss);
  CHECK_EQ(back.grid, f.grid);
  REQUIRE_EQ(back.samples.size(), f.samples.size());
  for (std::size_t i = 0; i < f.samples.size(); ++i) CHECK_EQ(back.samples[i], f.samples[i]);
}
