#pragma once

#include <Eigen/Core>

#include "xf/errors.hpp"

namespace xf {

enum class Backend { fd_dirichlet, periodic_spectral };

// Truncated rectangular domain with per-axis resolution. The two backends use
// different spacing conventions: the finite-difference grid includes both
// endpoints (h = L/(n-1), Dirichlet data vanishing at the boundary), the
// periodic grid identifies x_max with x_min (h = L/n).
struct Grid2D {
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
  int n_x = 0, n_y = 0;
  Backend backend = Backend::fd_dirichlet;

  double h_x = 0, h_y = 0;
  Eigen::VectorXd xs, ys;    // node coordinates
  Eigen::VectorXd xi, eta;   // Fourier frequencies (periodic backend only)

  bool periodic() const { return backend == Backend::periodic_spectral; }
  Eigen::Index size() const { return Eigen::Index(n_x) * n_y; }

  bool same_as(const Grid2D& o) const {
    return x_min == o.x_min && x_max == o.x_max && y_min == o.y_min &&
           y_max == o.y_max && n_x == o.n_x && n_y == o.n_y &&
           backend == o.backend;
  }
};

Grid2D build_grid(double x_min, double x_max, double y_min, double y_max,
                  int n_x, int n_y, Backend backend);

inline Grid2D build_square_grid(double half, int n, Backend backend) {
  return build_grid(-half, half, -half, half, n, n, backend);
}

void require_same_grid(const Grid2D& a, const Grid2D& b);

} // namespace xf
