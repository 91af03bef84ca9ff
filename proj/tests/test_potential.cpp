#include <doctest.h>

#include <cmath>

#include "xf/potential.hpp"

using namespace xf;

TEST_CASE("strip potential values and recorded amplitudes") {
  PotentialSpec V = make_strip_potential(0.5, 0.6, 0.5, 0.0);
  CHECK(V.kind == PotentialKind::strip);
  // g(0) = 1, <0> = 1, so the center value is the amplitude
  CHECK(V.V(0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(V.V(0.0, 0.5) == doctest::Approx(0.0));
  CHECK(V.V(3.0, 2.0) == doctest::Approx(0.0));
  CHECK(V.A0 == doctest::Approx(0.5));
  CHECK_FALSE(V.is_zero());

  // x-derivative closure matches a central difference of V
  const double h = 1e-5;
  for (double x : {-2.0, 0.3, 4.0}) {
    const double fd = (V.V(x + h, 0.1) - V.V(x - h, 0.1)) / (2 * h);
    CHECK(V.V_x(x, 0.1) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("strip potential parameter gates") {
  CHECK_THROWS_AS(make_strip_potential(0.5, 0.4, 0.5, 0.0), InvalidParameter);
  CHECK_THROWS_AS(make_strip_potential(0.5, 0.8, 0.5, 0.0), InvalidParameter);
  CHECK_THROWS_AS(make_strip_potential(0.5, 0.6, 1.5, 0.0), InvalidParameter);
  CHECK_THROWS_AS(make_strip_potential(-1.0, 0.6, 0.5, 0.0), InvalidParameter);
}

TEST_CASE("recorded amplitudes dominate the discretized potential") {
  const Grid2D g = build_square_grid(15.0, 129, Backend::fd_dirichlet);
  PotentialSpec V = make_strip_potential(0.7, 0.6, 0.5, 0.0);
  MeasuredAmplitudes m = measure_amplitudes(V, g);
  CHECK(m.a0_weighted <= V.A0 * (1 + 1e-12));
  CHECK(m.a1_weighted <= V.A1 * (1 + 1e-12));
  CHECK(m.a2_weighted <= V.A2 * (1 + 1e-12));
  // y = 0 is a grid row, so the center supremum is attained exactly
  CHECK(m.a0_weighted == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("gaussian well control potential") {
  PotentialSpec V = gaussian_well_potential(2.0, 1.0);
  CHECK(V.V(0.0, 0.0) == doctest::Approx(-2.0));
  CHECK(V.V(1.0, 0.0) == doctest::Approx(-2.0 * std::exp(-1.0)));
  CHECK(V.A0 == doctest::Approx(2.0));
  CHECK_FALSE(V.is_zero());
  CHECK_THROWS_AS(gaussian_well_potential(0.0, 1.0), InvalidParameter);
}

TEST_CASE("zero potential and grid sampling") {
  CHECK(zero_potential().is_zero());
  const Grid2D g = build_square_grid(10.0, 33, Backend::fd_dirichlet);
  PotentialSpec V = make_strip_potential(0.5, 0.6, 0.5, 0.0);
  Eigen::ArrayXXd a = potential_on_grid(V, g);
  CHECK(a.rows() == 33);
  CHECK(a.cols() == 33);
  CHECK(a(16, 16) == doctest::Approx(V.V(0.0, 0.0)));
  Eigen::ArrayXXd ax = potential_dx_on_grid(V, g);
  CHECK(ax(16, 16) == doctest::Approx(V.V_x(0.0, 0.0)));
}

TEST_CASE("jbracket") {
  CHECK(jbracket(0.0) == doctest::Approx(1.0));
  CHECK(jbracket(1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}
