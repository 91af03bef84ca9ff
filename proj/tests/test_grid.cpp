#include <doctest.h>

#include "xf/grid.hpp"

using namespace xf;

TEST_CASE("fd grid includes both endpoints with trapezoid spacing") {
  Grid2D g = build_square_grid(30.0, 256, Backend::fd_dirichlet);
  CHECK(g.n_x == 256);
  CHECK(g.h_x == doctest::Approx(60.0 / 255.0).epsilon(1e-15));
  CHECK(g.xs[0] == doctest::Approx(-30.0));
  CHECK(g.xs[255] == doctest::Approx(30.0));
  CHECK(g.size() == 256 * 256);
  CHECK_FALSE(g.periodic());
}

TEST_CASE("periodic grid drops the right endpoint and carries frequencies") {
  Grid2D g = build_square_grid(30.0, 256, Backend::periodic_spectral);
  const double h = 60.0 / 256.0;
  CHECK(g.h_x == doctest::Approx(h).epsilon(1e-15));
  CHECK(g.xs[0] == doctest::Approx(-30.0));
  CHECK(g.xs[255] == doctest::Approx(30.0 - h));
  CHECK(g.periodic());

  const double base = 2.0 * 3.14159265358979323846 / 60.0;
  CHECK(g.xi[0] == doctest::Approx(0.0));
  CHECK(g.xi[1] == doctest::Approx(base));
  CHECK(g.xi[128] == doctest::Approx(128 * base)); // positive Nyquist
  CHECK(g.xi[255] == doctest::Approx(-base));
  CHECK(g.eta.size() == 256);
}

TEST_CASE("grid construction rejects bad extents and resolutions") {
  CHECK_THROWS_AS(build_grid(1, -1, 0, 1, 64, 64, Backend::fd_dirichlet),
                  InvalidExtent);
  CHECK_THROWS_AS(build_grid(-1, 1, -1, 1, 4, 64, Backend::fd_dirichlet),
                  ResolutionTooSmall);
  CHECK_THROWS_AS(build_grid(-1, 1, -1, 1, 100, 100,
                             Backend::periodic_spectral),
                  NonPowerOfTwo);
}

TEST_CASE("rectangular grids keep per-axis spacing apart") {
  Grid2D g = build_grid(-30, 30, -8, 8, 2048, 16, Backend::periodic_spectral);
  CHECK(g.h_x == doctest::Approx(60.0 / 2048.0));
  CHECK(g.h_y == doctest::Approx(16.0 / 16.0));
  CHECK(g.n_x == 2048);
  CHECK(g.n_y == 16);
}

TEST_CASE("grid identity check") {
  Grid2D a = build_square_grid(10, 64, Backend::periodic_spectral);
  Grid2D b = build_square_grid(10, 64, Backend::periodic_spectral);
  Grid2D c = build_square_grid(10, 128, Backend::periodic_spectral);
  CHECK(a.same_as(b));
  CHECK_FALSE(a.same_as(c));
  CHECK_NOTHROW(require_same_grid(a, b));
  CHECK_THROWS_AS(require_same_grid(a, c), GridMismatch);
}
