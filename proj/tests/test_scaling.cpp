#include <cmath>
#include <sstream>

#include "doctest.h"
#include "mrproj/scaling.hpp"

using namespace mrproj;

TEST_CASE("haar system is the unit indicator, self-dual and orthonormal") {
  const DyadicGrid box{6, -64, 128, 1};
  const ScalingSystem sys = haar_system(6, box);
  CHECK(sys.orthonormal);
  REQUIRE_EQ(sys.phi.samples.size(), sys.phi_dual.samples.size());
  for (std::size_t i = 0; i < sys.phi.samples.size(); ++i) {
    const std::int64_t fine = box.lo + static_cast<std::int64_t>(i);
    CHECK_EQ(sys.phi.samples[i], Complex{fine >= 0 && fine < 64 ? 1.0 : 0.0});
    CHECK_EQ(sys.phi_dual.samples[i], sys.phi.samples[i]);
  }
  CHECK_EQ(biorthogonality_defect(sys, 1), 0.0);
}

TEST_CASE("shipped refinement filters have 2N taps summing to sqrt(2)") {
  for (int N = 1; N <= 10; ++N) {
    int len = 0;
    const double* h = daubechies_filter(N, len);
    CHECK_EQ(len, 2 * N);
    double sum = 0.0;
    for (int i = 0; i < len; ++i) sum += h[i];
    CHECK_LE(std::abs(sum - std::sqrt(2.0)), 1e-14);
  }
  int len = 0;
  CHECK_THROWS_AS(daubechies_filter(0, len), unsupported_order_error);
  CHECK_THROWS_AS(daubechies_filter(11, len), unsupported_order_error);
}

TEST_CASE("order one reproduces the haar samples") {
  const ScalingSystem db1 = daubechies_system(1, 7, 7);
  const ScalingSystem haar = haar_system(7, DyadicGrid{7, 0, 128, 1});
  REQUIRE_EQ(db1.phi.grid, haar.phi.grid);
  for (std::size_t i = 0; i < haar.phi.samples.size(); ++i)
    CHECK_EQ(db1.phi.samples[i], haar.phi.samples[i]);
}

TEST_CASE("daubechies samples integrate to one by partition of unity") {
  for (int N : {2, 3, 5}) {
    const ScalingSystem sys = daubechies_system(N, 8, 8);
    Complex mass{};
    for (const Complex& z : sys.phi.samples) mass += z;
    CHECK_LE(std::abs(mass * sys.phi.grid.cell_measure() - 1.0), 1e-12);
  }
  CHECK_THROWS_AS(daubechies_system(2, 8, 7), structural_error);  // cascade < J
}

TEST_CASE("quadrature biorthogonality defect shrinks with resolution") {
  // Orthonormality holds in L2; on the grid it holds up to the midpoint rule,
  // so the defect must drop by about 4x per extra level.
  auto defect_at = [](int J) {
    const ScalingSystem sys = daubechies_system(2, J, J);
    const std::int64_t s = std::int64_t{1} << J;
    return biorthogonality_defect(embedded(sys, -2 * s, 5 * s), 1);
  };
  const double d8 = defect_at(8);
  const double d12 = defect_at(12);
  CHECK_LE(d8, 1e-4);
  CHECK_LE(d12, 1e-6);
  CHECK_LT(d12, d8 / 100.0);
}

TEST_CASE("condition reports accept the shipped systems") {
  const std::int64_t s = std::int64_t{1} << 8;
  const ScalingSystem haar = make_scaling_system("haar", DyadicGrid{8, -s, 2 * s, 1});
  CHECK(validate_conditions(haar).valid());
  const ScalingSystem db2 = make_scaling_system("db2", DyadicGrid{8, -3 * s, 9 * s / 2, 1});
  const ConditionReport rep = validate_conditions(db2);
  CHECK(rep.valid());
  CHECK_GT(rep.mu_log_moment, 0.0);
  CHECK_FALSE(rep.note.empty());
}

TEST_CASE("system serialization round-trips bitwise") {
  const ScalingSystem sys = daubechies_system(3, 6, 6);
  std::stringstream ss;
  write_scaling_system(ss, sys);
  const ScalingSystem back = read_scaling_system(ss);
  CHECK_EQ(back.phi.grid, sys.phi.grid);
  for (std::size_t i = 0; i < sys.phi.samples.size(); ++i) {
    CHECK_EQ(back.phi.samples[i], sys.phi.samples[i]);
    CHECK_EQ(back.phi_dual.samples[i], sys.phi_dual.samples[i]);
  }
}

TEST_CASE("spec strings resolve to embedded systems") {
  const DyadicGrid box{7, -256, 768, 1};  // [-2, 6) holds the db3 support [0, 5]
  const ScalingSystem haar = make_scaling_system("haar", box);
  CHECK_EQ(haar.phi.grid, box);
  const ScalingSystem db3 = make_scaling_system("db3", box);
  CHECK_EQ(db3.phi.grid, box);
  CHECK(db3.orthonormal);
  CHECK_THROWS_AS(make_scaling_system("spline97", box), structural_error);
  CHECK_THROWS_AS(make_scaling_system("db11", box), unsupported_order_error);
}
