#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "xf/fft.hpp"
#include "xf/grid.hpp"

namespace xf {

// Discrete element of L^2 over the truncated domain.
struct StateField {
  Grid2D grid;
  CArray v; // (n_x, n_y)

  StateField() = default;
  explicit StateField(const Grid2D& g) : grid(g), v(CArray::Zero(g.n_x, g.n_y)) {}
};

// Grid quadrature weights: trapezoid on the fd grid, plain h_x*h_y on the
// periodic grid (exact discrete Parseval there).
double quad_weight_x(const Grid2D& g, int i);
double quad_weight_y(const Grid2D& g, int j);

Cplx inner(const StateField& f, const StateField& g); // conj(f) * g
double norm(const StateField& f);
double rel_l2_error(const StateField& approx, const StateField& ref);
StateField normalized(StateField f);

// Coordinate reduction from lab-frame (X, Y) to the reduced frame used by the
// Hamiltonian, with the associated drift velocity (B = 1):
//   x = -(E1 X + E2 Y)/|E|,  y = (-E2 X + E1 Y)/|E|,  alpha = (E2, -E1).
struct ReducedPoint {
  Eigen::Vector2d xy;
  Eigen::Vector2d alpha;
};
ReducedPoint reduce_coordinates(const Eigen::Vector2d& E,
                                const Eigen::Vector2d& XY);
Eigen::Vector2d unreduce_coordinates(const Eigen::Vector2d& E,
                                     const Eigen::Vector2d& xy);

// Standard data families used by tests and validation runs. All states decay
// below 1e-10 well inside the boundary when the parameters respect the box.
StateField gaussian_state(const Grid2D& g, double x0, double y0, double sigma,
                          double kx = 0, double ky = 0);

// Product of oscillator modes in y and a Gaussian in x, see hermite.hpp for
// the basis itself.
StateField hermite_product_state(const Grid2D& g, int n, double x0,
                                 double sigma_x);

// Random band-limited field under a fixed Gaussian envelope; deterministic in
// the seed. Band limit is in index space: modes with |k| <= band per axis.
StateField random_bandlimited_state(const Grid2D& g, int band, double sigma,
                                    std::uint32_t seed);

// Smooth random data supported away from the boundary (margin in cells),
// used by symmetry and inequality tests on the fd backend.
StateField random_interior_state(const Grid2D& g, int margin,
                                 std::uint32_t seed);

} // namespace xf
