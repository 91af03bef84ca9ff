#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <optional>

#include "xf/field.hpp"
#include "xf/grid.hpp"
#include "xf/potential.hpp"

namespace xf {

// The reduced-coordinate operator (D_x+y)^2 + D_y^2 + x (+ V). Units are
// fixed: m = 1/2, B = 1, q = 1, |E| = 1.
struct HamiltonianSpec {
  Grid2D grid;
  std::optional<PotentialSpec> potential;
  Eigen::Vector2d E = Eigen::Vector2d(1, 0);
  // false drops the linear x term, leaving the pure magnetic (Landau)
  // operator; used by the eigenvalue control experiments.
  bool stark_term = true;

  Eigen::Vector2d alpha() const { return Eigen::Vector2d(E[1], -E[0]); }
  const PotentialSpec* V() const {
    return potential ? &*potential : nullptr;
  }
};

HamiltonianSpec make_hamiltonian(const Grid2D& g,
                                 std::optional<PotentialSpec> V = {});

// H0 f. fd backend: centered second-order stencils with Dirichlet truncation;
// periodic backend: exact Fourier symbols, (D_x+y)^2 applied in the mixed
// (xi, y) representation.
StateField apply_h0(const StateField& f, bool stark_term = true);
StateField apply_h(const StateField& f, const PotentialSpec& V);
StateField apply_h(const StateField& f, const HamiltonianSpec& spec);

// Velocity components (D_x + y) f and D_y f on either backend.
StateField apply_dx_plus_y(const StateField& f);
StateField apply_dy(const StateField& f);

using SparseC = Eigen::SparseMatrix<Cplx>;

// Sparse fd matrix of H - lambda - i*nu*sign on the Dirichlet grid, unknowns
// ordered i + n_x*j to match the column-major field layout.
SparseC fd_shifted_matrix(const Grid2D& g, const PotentialSpec* V,
                          double lambda, double nu, int sign,
                          bool stark_term = true);

// Dense matrix of the periodic-backend H - lambda - i*nu*sign, assembled
// column by column; intended for small grids only.
Eigen::MatrixXcd periodic_shifted_matrix(const Grid2D& g,
                                         const PotentialSpec* V, double lambda,
                                         double nu, int sign,
                                         bool stark_term = true);

} // namespace xf
