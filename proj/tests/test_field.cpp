#include <doctest.h>

#include <cmath>

#include "xf/field.hpp"

using namespace xf;

namespace {
const Grid2D gp = build_square_grid(15.0, 64, Backend::periodic_spectral);
const Grid2D gf = build_square_grid(15.0, 65, Backend::fd_dirichlet);
} // namespace

TEST_CASE("quadrature weights: trapezoid on fd, plain h on periodic") {
  CHECK(quad_weight_x(gf, 0) == doctest::Approx(0.5 * gf.h_x));
  CHECK(quad_weight_x(gf, 32) == doctest::Approx(gf.h_x));
  CHECK(quad_weight_x(gf, 64) == doctest::Approx(0.5 * gf.h_x));
  CHECK(quad_weight_x(gp, 0) == doctest::Approx(gp.h_x));
  CHECK(quad_weight_x(gp, 63) == doctest::Approx(gp.h_x));
}

TEST_CASE("states come back normalized and inner products are sesquilinear") {
  StateField f = gaussian_state(gp, 0.5, -0.25, 1.0, 0.3, 0.0);
  CHECK(norm(f) == doctest::Approx(1.0).epsilon(1e-12));

  StateField g2 = f;
  g2.v *= Cplx(0, 2);
  CHECK(std::abs(inner(f, g2) - Cplx(0, 2)) < 1e-12);
  CHECK(std::abs(inner(g2, f) - Cplx(0, -2)) < 1e-12);
}

TEST_CASE("gaussian data decays below 1e-10 well inside the box") {
  StateField f = gaussian_state(gp, 0.0, 0.0, 1.5);
  double edge = 0;
  for (int j = 0; j < gp.n_y; ++j)
    edge = std::max(edge, std::abs(f.v(0, j)));
  for (int i = 0; i < gp.n_x; ++i)
    edge = std::max(edge, std::abs(f.v(i, 0)));
  CHECK(edge < 1e-10);
}

TEST_CASE("coordinate reduction for E = (3,4) at the lab point (1,1)") {
  ReducedPoint p =
      reduce_coordinates(Eigen::Vector2d(3, 4), Eigen::Vector2d(1, 1));
  CHECK(p.xy[0] == doctest::Approx(-7.0 / 5.0).epsilon(1e-14));
  CHECK(p.xy[1] == doctest::Approx(-1.0 / 5.0).epsilon(1e-14));
  CHECK(p.alpha[0] == doctest::Approx(4.0));
  CHECK(p.alpha[1] == doctest::Approx(-3.0));

  Eigen::Vector2d back = unreduce_coordinates(Eigen::Vector2d(3, 4), p.xy);
  CHECK(back[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(back[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(
      reduce_coordinates(Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 1)),
      ZeroField);
}

TEST_CASE("random states are deterministic in the seed") {
  StateField a = random_bandlimited_state(gp, 6, 0.2, 7);
  StateField b = random_bandlimited_state(gp, 6, 0.2, 7);
  StateField c = random_bandlimited_state(gp, 6, 0.2, 8);
  CHECK(rel_l2_error(a, b) == doctest::Approx(0.0));
  CHECK(rel_l2_error(a, c) > 1e-2);

  StateField d = random_interior_state(gf, 4, 3);
  StateField e = random_interior_state(gf, 4, 3);
  CHECK(rel_l2_error(d, e) == doctest::Approx(0.0));
}

TEST_CASE("discrete Parseval on the periodic grid") {
  StateField f = random_bandlimited_state(gp, 8, 0.25, 11);
  const double phys = norm(f);
  CArray spec = f.v;
  fft2(spec, false);
  const double via_fourier =
      std::sqrt(spec.abs2().sum() / double(gp.n_x) / double(gp.n_y) *
                gp.h_x * gp.h_y);
  CHECK(via_fourier == doctest::Approx(phys).epsilon(1e-12));
}
