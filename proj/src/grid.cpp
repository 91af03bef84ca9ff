#include "xf/grid.hpp"

#include <cmath>

namespace xf {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Standard DFT frequency layout: 0, 1, ..., n/2, -(n/2-1), ..., -1 times 2*pi/L.
Eigen::VectorXd dft_frequencies(int n, double length) {
  Eigen::VectorXd out(n);
  const double w = 2.0 * M_PI / length;
  for (int k = 0; k < n; ++k) {
    const int kk = (k <= n / 2) ? k : k - n;
    out[k] = w * kk;
  }
  return out;
}
} // namespace

Grid2D build_grid(double x_min, double x_max, double y_min, double y_max,
                  int n_x, int n_y, Backend backend) {
  if (!(x_min < x_max) || !(y_min < y_max))
    throw InvalidExtent("extents must satisfy x_min < x_max and y_min < y_max");
  if (n_x < 8 || n_y < 8)
    throw ResolutionTooSmall("need at least 8 points per axis");
  if (backend == Backend::periodic_spectral &&
      (!power_of_two(n_x) || !power_of_two(n_y)))
    throw NonPowerOfTwo("periodic backend requires power-of-two resolutions");

  Grid2D g;
  g.x_min = x_min; g.x_max = x_max; g.y_min = y_min; g.y_max = y_max;
  g.n_x = n_x; g.n_y = n_y;
  g.backend = backend;

  const double Lx = x_max - x_min, Ly = y_max - y_min;
  if (backend == Backend::fd_dirichlet) {
    g.h_x = Lx / (n_x - 1);
    g.h_y = Ly / (n_y - 1);
  } else {
    g.h_x = Lx / n_x;
    g.h_y = Ly / n_y;
  }

  g.xs.resize(n_x);
  for (int i = 0; i < n_x; ++i) g.xs[i] = x_min + i * g.h_x;
  g.ys.resize(n_y);
  for (int j = 0; j < n_y; ++j) g.ys[j] = y_min + j * g.h_y;

  if (backend == Backend::periodic_spectral) {
    g.xi = dft_frequencies(n_x, Lx);
    g.eta = dft_frequencies(n_y, Ly);
  }
  return g;
}

void require_same_grid(const Grid2D& a, const Grid2D& b) {
  if (!a.same_as(b))
    throw GridMismatch("fields live on different grids");
}

} // namespace xf
