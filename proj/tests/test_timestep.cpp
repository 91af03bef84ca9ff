#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "xf/errors.hpp"
#include "xf/field.hpp"
#include "xf/grid.hpp"
#include "xf/hamiltonian.hpp"
#include "xf/timestep.hpp"

using namespace xf;

namespace {

// e^{-itH} through a dense eigendecomposition of the assembled matrix; the
// only propagator here with no splitting or time-step error at all.
StateField dense_expm(double t, const StateField& f) {
  const Grid2D& g = f.grid;
  Eigen::MatrixXcd H = g.periodic()
                           ? periodic_shifted_matrix(g, nullptr, 0, 0, +1)
                           : Eigen::MatrixXcd(
                                 fd_shifted_matrix(g, nullptr, 0, 0, +1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  Eigen::VectorXcd coef =
      es.eigenvectors().adjoint() *
      Eigen::Map<const Eigen::VectorXcd>(f.v.data(), g.size());
  for (int k = 0; k < coef.size(); ++k)
    coef[k] *= std::polar(1.0, -t * es.eigenvalues()[k]);
  StateField out(g);
  Eigen::Map<Eigen::VectorXcd>(out.v.data(), g.size()) =
      es.eigenvectors() * coef;
  return out;
}

} // namespace

TEST_CASE("the split propagator converges at second order to dense expm") {
  Grid2D g = build_square_grid(8, 16, Backend::periodic_spectral);
  StateField f = gaussian_state(g, 0.5, -0.5, 1.6);
  const double t = 0.5;
  StateField ref = dense_expm(t, f);
  const double e200 =
      rel_l2_error(timestep_oracle(t, f, 200, TimestepMethod::strang_split), ref);
  const double e400 =
      rel_l2_error(timestep_oracle(t, f, 400, TimestepMethod::strang_split), ref);
  CHECK(e200 < 1e-5);
  CHECK(e200 / e400 > 3.5);
  CHECK(e200 / e400 < 4.5);
}

TEST_CASE("the implicit propagator converges at second order to dense expm") {
  Grid2D g = build_square_grid(8, 17, Backend::fd_dirichlet);
  StateField f = gaussian_state(g, 0.5, -0.5, 1.6);
  const double t = 0.5;
  StateField ref = dense_expm(t, f);
  const double e200 =
      rel_l2_error(timestep_oracle(t, f, 200, TimestepMethod::crank_nicolson), ref);
  const double e400 =
      rel_l2_error(timestep_oracle(t, f, 400, TimestepMethod::crank_nicolson), ref);
  CHECK(e200 < 5e-4);
  CHECK(e200 / e400 > 3.5);
  CHECK(e200 / e400 < 4.5);
  // Cayley transform of a Hermitian matrix: the plain vector norm is exact.
  // (The trapezoid-weighted norm is not conserved once mass reaches the
  // half-weighted boundary nodes, so it is not the invariant to test.)
  StateField u = timestep_oracle(1.0, f, 150, TimestepMethod::crank_nicolson);
  const double l2f = std::sqrt(f.v.abs2().sum());
  const double l2u = std::sqrt(u.v.abs2().sum());
  CHECK(std::abs(l2u / l2f - 1.0) < 1e-12);
}

TEST_CASE("the split propagator is exactly unitary") {
  Grid2D g = build_square_grid(8, 64, Backend::periodic_spectral);
  StateField f = gaussian_state(g, 0, 0.5, 1.5, 1.0, -0.5);
  StateField u = timestep_oracle(1.0, f, 200, TimestepMethod::strang_split);
  CHECK(std::abs(norm(u) / norm(f) - 1.0) < 1e-12);
}

TEST_CASE("the marcher reproduces the oracle step by step") {
  Grid2D g = build_square_grid(8, 32, Backend::periodic_spectral);
  StateField f = gaussian_state(g, 0.3, -0.2, 1.4);
  const double t = 0.8;
  const int n = 120;
  StrangMarcher m(g, t / n);
  CArray v = f.v;
  for (int k = 0; k < n; ++k) m.step(v);
  StateField marched(g);
  marched.v = v;
  StateField oracle = timestep_oracle(t, f, n, TimestepMethod::strang_split);
  CHECK(rel_l2_error(marched, oracle) < 1e-13);
}

TEST_CASE("propagator guards") {
  Grid2D per = build_square_grid(8, 32, Backend::periodic_spectral);
  Grid2D fd = build_square_grid(8, 33, Backend::fd_dirichlet);
  StateField fp = gaussian_state(per, 0, 0, 1.5);
  StateField ff = gaussian_state(fd, 0, 0, 1.5);

  CHECK_THROWS_AS(timestep_oracle(1.0, fp, 10, TimestepMethod::strang_split),
                  StepTooLarge);
  CHECK_THROWS_AS(timestep_oracle(-1.0, fp, 200, TimestepMethod::strang_split),
                  InvalidParameter);
  CHECK_THROWS_AS(timestep_oracle(0.5, ff, 200, TimestepMethod::strang_split),
                  BackendUnsupported);
  CHECK_THROWS_AS(timestep_oracle(0.5, fp, 200, TimestepMethod::crank_nicolson),
                  BackendUnsupported);
  CHECK_THROWS_AS(StrangMarcher(per, 0.0), InvalidParameter);

  StateField same = timestep_oracle(0.0, fp, 200, TimestepMethod::strang_split);
  CHECK(rel_l2_error(same, fp) == 0.0);
}
