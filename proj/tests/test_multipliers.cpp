#include <doctest.h>

#include <cmath>
#include <complex>

#include "xf/errors.hpp"
#include "xf/field.hpp"
#include "xf/grid.hpp"
#include "xf/multipliers.hpp"

using namespace xf;

namespace {

StateField plane_wave(const Grid2D& g, int m, int n) {
  StateField f(g);
  const double xi = 2.0 * M_PI * m / (g.x_max - g.x_min);
  const double eta = 2.0 * M_PI * n / (g.y_max - g.y_min);
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i)
      f.v(i, j) = std::polar(1.0, xi * g.xs[i] + eta * g.ys[j]);
  return f;
}

// Worst-case pointwise deviation of out from scale * f.
double eigen_defect(const StateField& out, const StateField& f, Cplx scale) {
  return (out.v - scale * f.v).abs().maxCoeff();
}

} // namespace

TEST_CASE("the clamp profile matches its closed form") {
  CHECK(chi_clamp(5.0, 10.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(chi_clamp(25.0, 10.0) == doctest::Approx(20.0).epsilon(1e-15));
  CHECK(chi_clamp(-25.0, 10.0) == doctest::Approx(-20.0).epsilon(1e-15));
  CHECK(chi_clamp(15.0, 10.0) == doctest::Approx(16.5625).epsilon(1e-15));
  // joins are continuous and the profile never decreases
  CHECK(std::abs(chi_clamp(10.0 + 1e-9, 10.0) - 10.0) < 1e-7);
  CHECK(std::abs(chi_clamp(20.0 - 1e-9, 10.0) - 20.0) < 1e-7);
  double prev = -21;
  for (double r = -21; r <= 21; r += 0.05) {
    const double c = chi_clamp(r, 10.0);
    CHECK(c >= prev - 1e-12);
    CHECK(chi_clamp(-r, 10.0) == doctest::Approx(-c).epsilon(1e-14));
    prev = c;
  }
}

TEST_CASE("each symbol acts as a scalar on a plane wave") {
  Grid2D g = build_square_grid(10, 64, Backend::periodic_spectral);
  const int m = 3, n = -5;
  const double xi = 2.0 * M_PI * m / 20.0;
  const double eta = 2.0 * M_PI * n / 20.0;
  StateField f = plane_wave(g, m, n);

  auto check_kind = [&](const MultiplierSymbol& sym, Cplx scale) {
    StateField out = fourier_multiplier(sym, f);
    CHECK(eigen_defect(out, f, scale) < 1e-12);
  };

  check_kind(jdx_pow(-1.1), std::pow(1 + xi * xi, -0.55));
  check_kind(jdx_pow(2.0), std::pow(1 + xi * xi, 1.0));
  check_kind(jdy_pow(0.5), std::pow(1 + eta * eta, 0.25));
  check_kind(abs_dy_pow(0.5), std::pow(std::abs(eta), 0.5));
  check_kind(inv_abs_dx_plus_i(),
             std::pow(1 + xi * xi, -0.5));
  check_kind(shift(2.5), std::polar(1.0, 2.5 * xi));
  check_kind(F_eps(0.3),
             std::sqrt(1 + xi * xi) / (1 + 0.3 * std::sqrt(1 + xi * xi)));

  // clamp engages only on modes above the threshold
  StateField high = plane_wave(g, 20, 0);
  const double xi_h = 2.0 * M_PI * 20 / 20.0;
  StateField clamped = fourier_multiplier(chi_t(1.2), high);
  CHECK(eigen_defect(clamped, high, chi_clamp(xi_h, 1.2)) < 1e-12);
  check_kind(chi_t(10.0), chi_clamp(xi, 10.0));
}

TEST_CASE("the shift symbol translates and preserves norms") {
  Grid2D g = build_square_grid(10, 64, Backend::periodic_spectral);
  StateField f = random_bandlimited_state(g, 10, 2.0, 17);
  const int cells = 5;
  StateField out = fourier_multiplier(shift(cells * g.h_x), f);
  CHECK(std::abs(norm(out) / norm(f) - 1.0) < 1e-13);
  double worst = 0;
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i)
      worst = std::max(
          worst, std::abs(out.v(i, j) - f.v((i + cells) % g.n_x, j)));
  CHECK(worst < 1e-12);
}

TEST_CASE("symbol parameter guards") {
  CHECK_THROWS_AS(jdy_pow(0.0), InvalidParameter);
  CHECK_THROWS_AS(jdy_pow(1.5), InvalidParameter);
  CHECK_THROWS_AS(abs_dy_pow(2.0), InvalidParameter);
  CHECK_THROWS_AS(F_eps(0.0), InvalidParameter);
  CHECK_THROWS_AS(F_eps(1.5), InvalidParameter);
  CHECK_THROWS_AS(chi_t(1.0), InvalidParameter);

  Grid2D fd = build_square_grid(10, 33, Backend::fd_dirichlet);
  StateField f = random_interior_state(fd, 4, 1);
  CHECK_THROWS_AS(fourier_multiplier(jdx_pow(1.0), f),
                  BackendUnsupported);
}
