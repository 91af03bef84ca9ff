#pragma once

#include <Eigen/Core>

#include "xf/fft.hpp"
#include "xf/field.hpp"
#include "xf/grid.hpp"

namespace xf {

// Normalized harmonic oscillator eigenfunctions psi_n on the y-grid, built by
// the stable three-term recurrence. All norms here are 1D in y with the grid's
// y-quadrature.
class HermiteBasis {
public:
  HermiteBasis(const Grid2D& g, int max_n);

  int max_n() const { return max_n_; }
  const Grid2D& grid() const { return grid_; }
  Eigen::VectorXd psi(int n) const;

  double y_norm(const Eigen::VectorXd& f) const;
  double y_inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;

  // 1D spectral residual ||(D_y^2 + y^2) psi_n - (2n+1) psi_n|| / (2n+1).
  double eigen_residual(int n) const;

  // coeffs(i, n) = <psi_n, v(i, .)>_y ; synthesize inverts on the retained
  // modes.
  Eigen::MatrixXcd analyze(const CArray& v) const;
  CArray synthesize(const Eigen::MatrixXcd& coeffs) const;

private:
  Grid2D grid_;
  int max_n_;
  Eigen::MatrixXd psi_;  // n_y rows, max_n+1 cols
  Eigen::VectorXd wy_;   // y-quadrature weights
};

// psi_n(y_j) evaluated by recurrence, no normalization check.
Eigen::VectorXd hermite_values(int n, const Eigen::VectorXd& ys);

// The y-eigenfunction extended constantly in x. Throws DomainTooSmall when
// the y-extent cannot hold the classically allowed region plus margin.
StateField hermite_psi(int n, const Grid2D& g);

} // namespace xf
