#include "xf/field.hpp"

#include <cmath>
#include <random>

#include "xf/errors.hpp"

namespace xf {

double quad_weight_x(const Grid2D& g, int i) {
  if (g.periodic()) return g.h_x;
  return (i == 0 || i == g.n_x - 1) ? 0.5 * g.h_x : g.h_x;
}

double quad_weight_y(const Grid2D& g, int j) {
  if (g.periodic()) return g.h_y;
  return (j == 0 || j == g.n_y - 1) ? 0.5 * g.h_y : g.h_y;
}

Cplx inner(const StateField& f, const StateField& g) {
  require_same_grid(f.grid, g.grid);
  const Grid2D& gr = f.grid;
  Cplx acc = 0;
  for (int j = 0; j < gr.n_y; ++j) {
    const double wy = quad_weight_y(gr, j);
    Cplx col = 0;
    for (int i = 0; i < gr.n_x; ++i)
      col += std::conj(f.v(i, j)) * g.v(i, j) * quad_weight_x(gr, i);
    acc += wy * col;
  }
  return acc;
}

double norm(const StateField& f) {
  return std::sqrt(std::abs(inner(f, f).real()));
}

double rel_l2_error(const StateField& approx, const StateField& ref) {
  require_same_grid(approx.grid, ref.grid);
  StateField diff = approx;
  diff.v -= ref.v;
  const double nr = norm(ref);
  if (nr == 0) throw InvalidParameter("reference state has zero norm");
  return norm(diff) / nr;
}

StateField normalized(StateField f) {
  const double n = norm(f);
  if (n == 0) throw InvalidParameter("cannot normalize the zero state");
  f.v /= n;
  return f;
}

ReducedPoint reduce_coordinates(const Eigen::Vector2d& E,
                                const Eigen::Vector2d& XY) {
  const double mag = E.norm();
  if (mag == 0) throw ZeroField("electric field must be nonzero");
  ReducedPoint out;
  out.xy[0] = -(E[0] * XY[0] + E[1] * XY[1]) / mag;
  out.xy[1] = (-E[1] * XY[0] + E[0] * XY[1]) / mag;
  out.alpha = Eigen::Vector2d(E[1], -E[0]); // B = 1
  return out;
}

Eigen::Vector2d unreduce_coordinates(const Eigen::Vector2d& E,
                                     const Eigen::Vector2d& xy) {
  // The reduction matrix is a symmetric involution, so it is its own inverse.
  return reduce_coordinates(E, xy).xy;
}

StateField gaussian_state(const Grid2D& g, double x0, double y0, double sigma,
                          double kx, double ky) {
  if (sigma <= 0) throw InvalidParameter("gaussian width must be positive");
  StateField f(g);
  const double s2 = 2.0 * sigma * sigma;
  for (int j = 0; j < g.n_y; ++j) {
    const double dy = g.ys[j] - y0;
    for (int i = 0; i < g.n_x; ++i) {
      const double dx = g.xs[i] - x0;
      const double amp = std::exp(-(dx * dx + dy * dy) / s2);
      f.v(i, j) = amp * std::polar(1.0, kx * g.xs[i] + ky * g.ys[j]);
    }
  }
  return normalized(std::move(f));
}

StateField random_bandlimited_state(const Grid2D& g, int band, double sigma,
                                    std::uint32_t seed) {
  if (band < 1) throw InvalidParameter("band limit must be at least 1");
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  CArray spec = CArray::Zero(g.n_x, g.n_y);
  for (int j = 0; j < g.n_y; ++j) {
    const int kj = (j <= g.n_y / 2) ? j : j - g.n_y;
    for (int i = 0; i < g.n_x; ++i) {
      const int ki = (i <= g.n_x / 2) ? i : i - g.n_x;
      if (std::abs(ki) <= band && std::abs(kj) <= band)
        spec(i, j) = Cplx(nd(rng), nd(rng));
    }
  }
  fft2(spec, true);
  StateField f(g);
  const double cx = 0.5 * (g.x_min + g.x_max), cy = 0.5 * (g.y_min + g.y_max);
  const double s2 = 2.0 * sigma * sigma;
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i) {
      const double dx = g.xs[i] - cx, dy = g.ys[j] - cy;
      f.v(i, j) = spec(i, j) * std::exp(-(dx * dx + dy * dy) / s2);
    }
  return normalized(std::move(f));
}

namespace {
double boundary_ramp(int idx, int n, int margin) {
  const int d = std::min(idx, n - 1 - idx);
  if (d <= margin) return 0.0;
  const int ramp = std::max(2, n / 8);
  const double u = std::min(1.0, double(d - margin) / ramp);
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); // quintic smoothstep
}
} // namespace

StateField random_interior_state(const Grid2D& g, int margin,
                                 std::uint32_t seed) {
  StateField f = random_bandlimited_state(
      g, std::max(2, std::min(g.n_x, g.n_y) / 16),
      0.25 * std::min(g.x_max - g.x_min, g.y_max - g.y_min), seed);
  for (int j = 0; j < g.n_y; ++j) {
    const double ry = boundary_ramp(j, g.n_y, margin);
    for (int i = 0; i < g.n_x; ++i)
      f.v(i, j) *= boundary_ramp(i, g.n_x, margin) * ry;
  }
  return normalized(std::move(f));
}

} // namespace xf
