#include <doctest.h>

#include <cmath>

#include "xf/hermite.hpp"

using namespace xf;

namespace {
const Grid2D g = build_square_grid(15.0, 128, Backend::periodic_spectral);
} // namespace

TEST_CASE("ground state value and normalization") {
  Eigen::VectorXd ys = Eigen::VectorXd::LinSpaced(3, -1, 1);
  Eigen::VectorXd v = hermite_values(0, ys);
  CHECK(v[1] == doctest::Approx(0.7511255444649425).epsilon(1e-15));

  HermiteBasis basis(g, 12);
  for (int n = 0; n <= 12; ++n)
    CHECK(basis.y_norm(basis.psi(n)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("orthogonality and the y-multiplication rule") {
  HermiteBasis basis(g, 10);
  CHECK(std::abs(basis.y_inner(basis.psi(2), basis.psi(6))) < 1e-10);

  // ||y psi_n||^2 = (2n+1)/2
  for (int n : {0, 3, 10}) {
    Eigen::VectorXd yp = basis.psi(n);
    for (int j = 0; j < g.n_y; ++j) yp[j] *= g.ys[j];
    CHECK(basis.y_inner(yp, yp) ==
          doctest::Approx((2.0 * n + 1.0) / 2.0).epsilon(1e-10));
  }
}

TEST_CASE("oscillator eigenvalue residuals are spectrally small") {
  HermiteBasis basis(g, 10);
  for (int n : {0, 1, 5, 10}) CHECK(basis.eigen_residual(n) < 1e-9);
}

TEST_CASE("analyze and synthesize round-trip a mode mixture") {
  HermiteBasis basis(g, 6);
  StateField f(g);
  for (int i = 0; i < g.n_x; ++i) {
    const double a = std::sin(0.2 * g.xs[i]);
    const double b = std::cos(0.1 * g.xs[i]);
    for (int j = 0; j < g.n_y; ++j)
      f.v(i, j) = a * basis.psi(2)[j] + Cplx(0, 1) * b * basis.psi(5)[j];
  }
  Eigen::MatrixXcd coeffs = basis.analyze(f.v);
  CHECK(coeffs.cols() == 7);
  CHECK(std::abs(coeffs(10, 2).real() - std::sin(0.2 * g.xs[10])) < 1e-10);
  CHECK(std::abs(coeffs(10, 3)) < 1e-10);
  CArray back = basis.synthesize(coeffs);
  StateField rec(g);
  rec.v = back;
  CHECK(rel_l2_error(rec, f) < 1e-10);
}

TEST_CASE("domain gate for high modes") {
  CHECK_NOTHROW(hermite_psi(40, g));
  CHECK_THROWS_AS(hermite_psi(80, g), DomainTooSmall);
}
