#include <doctest.h>

#include <cmath>
#include <complex>

#include "xf/errors.hpp"
#include "xf/field.hpp"
#include "xf/grid.hpp"
#include "xf/hamiltonian.hpp"
#include "xf/hermite.hpp"
#include "xf/potential.hpp"

using namespace xf;

namespace {

// e^{ikx} psi_n(y) with k a grid frequency; H0 acts diagonally in x on it.
StateField mode_times_hermite(const Grid2D& g, double k, int n) {
  StateField f(g);
  Eigen::VectorXd psi = hermite_values(n, g.ys);
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i)
      f.v(i, j) = std::polar(1.0, k * g.xs[i]) * psi[j];
  return f;
}

} // namespace

TEST_CASE("periodic H0 on a single x-mode times an oscillator mode") {
  Grid2D g = build_square_grid(15, 128, Backend::periodic_spectral);
  const double k = 2.0 * M_PI / 30.0 * 4;
  const int n = 2;
  StateField f = mode_times_hermite(g, k, n);

  // (D_x+y)^2 + D_y^2 + x maps e^{ikx} psi_n to
  // e^{ikx} [(2ky + k^2 + 2n+1) psi_n] + x e^{ikx} psi_n.
  StateField expect(g);
  Eigen::VectorXd psi = hermite_values(n, g.ys);
  for (int j = 0; j < g.n_y; ++j) {
    const double y = g.ys[j];
    for (int i = 0; i < g.n_x; ++i) {
      const double x = g.xs[i];
      expect.v(i, j) = std::polar(1.0, k * x) *
                       ((2 * k * y + k * k + 2 * n + 1 + x) * psi[j]);
    }
  }
  CHECK(rel_l2_error(apply_h0(f), expect) < 1e-11);

  StateField vel(g);
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i)
      vel.v(i, j) = std::polar(1.0, k * g.xs[i]) * ((k + g.ys[j]) * psi[j]);
  CHECK(rel_l2_error(apply_dx_plus_y(f), vel) < 1e-11);

  // psi_n' = sqrt(n/2) psi_{n-1} - sqrt((n+1)/2) psi_{n+1}; D_y = -i d/dy
  Eigen::VectorXd lo = hermite_values(n - 1, g.ys);
  Eigen::VectorXd hi = hermite_values(n + 1, g.ys);
  StateField dy(g);
  for (int j = 0; j < g.n_y; ++j) {
    const double dpsi =
        std::sqrt(n / 2.0) * lo[j] - std::sqrt((n + 1) / 2.0) * hi[j];
    for (int i = 0; i < g.n_x; ++i)
      dy.v(i, j) = Cplx(0, -1) * std::polar(1.0, k * g.xs[i]) * dpsi;
  }
  CHECK(rel_l2_error(apply_dy(f), dy) < 1e-11);
}

TEST_CASE("periodic H0 matches the closed form on a Gaussian") {
  Grid2D g = build_square_grid(14, 128, Backend::periodic_spectral);
  const double s2 = 1.5 * 1.5;
  StateField f(g), expect(g);
  for (int j = 0; j < g.n_y; ++j) {
    const double y = g.ys[j];
    for (int i = 0; i < g.n_x; ++i) {
      const double x = g.xs[i];
      const double v = std::exp(-(x * x + y * y) / (2 * s2));
      f.v(i, j) = v;
      expect.v(i, j) =
          (Cplx(2.0 / s2 - (x * x + y * y) / (s2 * s2) + y * y + x,
                2.0 * x * y / s2)) *
          v;
    }
  }
  CHECK(rel_l2_error(apply_h0(f), expect) < 1e-10);
}

TEST_CASE("fd H0 converges at second order to the closed form") {
  const double s2 = 1.5 * 1.5;
  auto fd_error = [&](int n) {
    Grid2D g = build_square_grid(12, n, Backend::fd_dirichlet);
    StateField f(g), expect(g);
    for (int j = 0; j < g.n_y; ++j) {
      const double y = g.ys[j];
      for (int i = 0; i < g.n_x; ++i) {
        const double x = g.xs[i];
        const double v = std::exp(-(x * x + y * y) / (2 * s2));
        f.v(i, j) = v;
        expect.v(i, j) =
            (Cplx(2.0 / s2 - (x * x + y * y) / (s2 * s2) + y * y + x,
                  2.0 * x * y / s2)) *
            v;
      }
    }
    return rel_l2_error(apply_h0(f), expect);
  };
  const double e65 = fd_error(65);
  const double e129 = fd_error(129);
  CHECK(e65 < 5e-2);
  CHECK(e65 / e129 > 3.4);
  CHECK(e65 / e129 < 4.6);
}

TEST_CASE("sparse fd assembly agrees with the operator application") {
  Grid2D g = build_square_grid(8, 33, Backend::fd_dirichlet);
  PotentialSpec V = make_strip_potential(0.5, 0.6, 0.5, 0.0);
  StateField f = random_interior_state(g, 3, 7);
  const double lambda = 2.5, nu = 0.3;
  for (int sign : {+1, -1}) {
    SparseC M = fd_shifted_matrix(g, &V, lambda, nu, sign);
    Eigen::VectorXcd u =
        M * Eigen::Map<const Eigen::VectorXcd>(f.v.data(), g.size());
    StateField hf = apply_h(f, V);
    hf.v -= Cplx(lambda, nu * sign) * f.v;
    StateField mv(g);
    Eigen::Map<Eigen::VectorXcd>(mv.v.data(), g.size()) = u;
    CHECK(rel_l2_error(mv, hf) < 1e-12);
  }
  CHECK_THROWS_AS(
      fd_shifted_matrix(build_square_grid(8, 16, Backend::periodic_spectral),
                        nullptr, 0, 0, +1),
      BackendUnsupported);
}

TEST_CASE("dense periodic assembly agrees with the operator application") {
  Grid2D g = build_square_grid(8, 16, Backend::periodic_spectral);
  StateField f = random_bandlimited_state(g, 5, 2.0, 11);
  Eigen::MatrixXcd M = periodic_shifted_matrix(g, nullptr, 1.5, 0.25, -1);
  Eigen::VectorXcd u =
      M * Eigen::Map<const Eigen::VectorXcd>(f.v.data(), g.size());
  StateField hf = apply_h0(f);
  hf.v -= Cplx(1.5, -0.25) * f.v;
  StateField mv(g);
  Eigen::Map<Eigen::VectorXcd>(mv.v.data(), g.size()) = u;
  CHECK(rel_l2_error(mv, hf) < 1e-12);

  Eigen::MatrixXcd H = periodic_shifted_matrix(g, nullptr, 0, 0, +1);
  CHECK((H - H.adjoint()).norm() / H.norm() < 1e-13);

  CHECK_THROWS_AS(
      periodic_shifted_matrix(build_square_grid(8, 17, Backend::fd_dirichlet),
                              nullptr, 0, 0, +1),
      BackendUnsupported);
  CHECK_THROWS_AS(
      periodic_shifted_matrix(
          build_square_grid(30, 128, Backend::periodic_spectral), nullptr, 0, 0,
          +1),
      InvalidParameter);
}

TEST_CASE("the linear term toggle removes exactly the ramp") {
  Grid2D g = build_square_grid(10, 64, Backend::periodic_spectral);
  StateField f = random_bandlimited_state(g, 8, 2.0, 3);
  StateField full = apply_h0(f, true);
  StateField landau = apply_h0(f, false);
  double worst = 0;
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i)
      worst = std::max(worst, std::abs(full.v(i, j) - landau.v(i, j) -
                                       g.xs[i] * f.v(i, j)));
  CHECK(worst < 1e-12);
}

TEST_CASE("shifted oscillator modes are Landau eigenstates") {
  Grid2D g = build_square_grid(15, 128, Backend::periodic_spectral);
  const double k = 2.0 * M_PI / 30.0 * 4;
  Eigen::VectorXd shifted = g.ys.array() + k;
  for (int n : {0, 1}) {
    StateField f(g);
    Eigen::VectorXd p = hermite_values(n, shifted);
    for (int j = 0; j < g.n_y; ++j)
      for (int i = 0; i < g.n_x; ++i)
        f.v(i, j) = std::polar(1.0, k * g.xs[i]) * p[j];
    StateField hf = apply_h0(f, false);
    hf.v -= double(2 * n + 1) * f.v;
    CHECK(norm(hf) / norm(f) < 1e-12);
  }
}

TEST_CASE("potential application adds the sampled potential pointwise") {
  Grid2D g = build_square_grid(12, 64, Backend::periodic_spectral);
  PotentialSpec V = make_strip_potential(0.7, 0.6, 0.55, 0.0);
  StateField f = random_bandlimited_state(g, 6, 2.5, 5);
  StateField with = apply_h(f, V);
  StateField base = apply_h0(f);
  double worst = 0;
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i)
      worst = std::max(worst,
                       std::abs(with.v(i, j) - base.v(i, j) -
                                V.V(g.xs[i], g.ys[j]) * f.v(i, j)));
  CHECK(worst < 1e-12);

  HamiltonianSpec spec = make_hamiltonian(g, V);
  CHECK(spec.E[0] == 1.0);
  CHECK(spec.E[1] == 0.0);
  CHECK(spec.alpha()[0] == 0.0);
  CHECK(spec.alpha()[1] == -1.0);
  CHECK(rel_l2_error(apply_h(f, spec), with) < 1e-14);

  spec.stark_term = false;
  StateField landau = apply_h(f, spec);
  StateField expect = apply_h0(f, false);
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i)
      expect.v(i, j) += V.V(g.xs[i], g.ys[j]) * f.v(i, j);
  CHECK(rel_l2_error(landau, expect) < 1e-13);
}
