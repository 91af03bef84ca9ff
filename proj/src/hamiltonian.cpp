#include "xf/hamiltonian.hpp"

#include <vector>

#include "xf/errors.hpp"
#include "xf/fft.hpp"

namespace xf {

HamiltonianSpec make_hamiltonian(const Grid2D& g,
                                 std::optional<PotentialSpec> V) {
  HamiltonianSpec spec;
  spec.grid = g;
  spec.potential = std::move(V);
  return spec;
}

namespace {

void apply_h0_periodic(const Grid2D& g, CArray& v, bool stark) {
  CArray kinetic = v;
  // (D_x + y)^2 in the mixed (xi, y) representation.
  apply_symbol_x(g, kinetic, [](double xi, double y) {
    const double s = xi + y;
    return Cplx(s * s, 0);
  });
  CArray dyy = v;
  apply_symbol_y(g, dyy, [](double, double eta) { return Cplx(eta * eta, 0); });
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i)
      v(i, j) = kinetic(i, j) + dyy(i, j) + (stark ? g.xs[i] : 0.0) * v(i, j);
}

void apply_h0_fd(const Grid2D& g, CArray& v, bool stark) {
  const double ihx2 = 1.0 / (g.h_x * g.h_x);
  const double ihy2 = 1.0 / (g.h_y * g.h_y);
  const double ih2x = 1.0 / (2.0 * g.h_x);
  CArray out(g.n_x, g.n_y);
  for (int j = 0; j < g.n_y; ++j) {
    const double y = g.ys[j];
    for (int i = 0; i < g.n_x; ++i) {
      const Cplx c = v(i, j);
      const Cplx xm = (i > 0) ? v(i - 1, j) : Cplx(0);
      const Cplx xp = (i + 1 < g.n_x) ? v(i + 1, j) : Cplx(0);
      const Cplx ym = (j > 0) ? v(i, j - 1) : Cplx(0);
      const Cplx yp = (j + 1 < g.n_y) ? v(i, j + 1) : Cplx(0);
      Cplx acc = -(xp - 2.0 * c + xm) * ihx2 - (yp - 2.0 * c + ym) * ihy2;
      acc += Cplx(0, -2.0 * y) * (xp - xm) * ih2x;
      acc += (y * y + (stark ? g.xs[i] : 0.0)) * c;
      out(i, j) = acc;
    }
  }
  v.swap(out);
}

} // namespace

StateField apply_h0(const StateField& f, bool stark_term) {
  StateField out = f;
  if (f.grid.periodic())
    apply_h0_periodic(f.grid, out.v, stark_term);
  else
    apply_h0_fd(f.grid, out.v, stark_term);
  return out;
}

StateField apply_dx_plus_y(const StateField& f) {
  const Grid2D& g = f.grid;
  StateField out = f;
  if (g.periodic()) {
    apply_symbol_x(g, out.v,
                   [](double xi, double y) { return Cplx(xi + y, 0); });
    return out;
  }
  const double ih2x = 1.0 / (2.0 * g.h_x);
  for (int j = 0; j < g.n_y; ++j) {
    const double y = g.ys[j];
    for (int i = 0; i < g.n_x; ++i) {
      const Cplx xm = (i > 0) ? f.v(i - 1, j) : Cplx(0);
      const Cplx xp = (i + 1 < g.n_x) ? f.v(i + 1, j) : Cplx(0);
      out.v(i, j) = Cplx(0, -1) * (xp - xm) * ih2x + y * f.v(i, j);
    }
  }
  return out;
}

StateField apply_dy(const StateField& f) {
  const Grid2D& g = f.grid;
  StateField out = f;
  if (g.periodic()) {
    apply_symbol_y(g, out.v,
                   [](double, double eta) { return Cplx(eta, 0); });
    return out;
  }
  const double ih2y = 1.0 / (2.0 * g.h_y);
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i) {
      const Cplx ym = (j > 0) ? f.v(i, j - 1) : Cplx(0);
      const Cplx yp = (j + 1 < g.n_y) ? f.v(i, j + 1) : Cplx(0);
      out.v(i, j) = Cplx(0, -1) * (yp - ym) * ih2y;
    }
  return out;
}

StateField apply_h(const StateField& f, const PotentialSpec& V) {
  StateField out = apply_h0(f);
  if (!V.is_zero()) {
    const Grid2D& g = f.grid;
    for (int j = 0; j < g.n_y; ++j)
      for (int i = 0; i < g.n_x; ++i)
        out.v(i, j) += V.V(g.xs[i], g.ys[j]) * f.v(i, j);
  }
  return out;
}

StateField apply_h(const StateField& f, const HamiltonianSpec& spec) {
  require_same_grid(f.grid, spec.grid);
  StateField out = apply_h0(f, spec.stark_term);
  const PotentialSpec* V = spec.V();
  if (V && !V->is_zero()) {
    const Grid2D& g = f.grid;
    for (int j = 0; j < g.n_y; ++j)
      for (int i = 0; i < g.n_x; ++i)
        out.v(i, j) += V->V(g.xs[i], g.ys[j]) * f.v(i, j);
  }
  return out;
}

SparseC fd_shifted_matrix(const Grid2D& g, const PotentialSpec* V,
                          double lambda, double nu, int sign,
                          bool stark_term) {
  if (g.periodic())
    throw BackendUnsupported("sparse assembly is for the fd backend");
  const int nx = g.n_x, ny = g.n_y, N = nx * ny;
  const double ihx2 = 1.0 / (g.h_x * g.h_x);
  const double ihy2 = 1.0 / (g.h_y * g.h_y);
  std::vector<Eigen::Triplet<Cplx>> trip;
  trip.reserve(static_cast<size_t>(5) * N);
  const Cplx shift(-lambda, -nu * sign);
  for (int j = 0; j < ny; ++j) {
    const double y = g.ys[j];
    for (int i = 0; i < nx; ++i) {
      const int row = i + nx * j;
      double vij = 0;
      if (V && !V->is_zero()) vij = V->V(g.xs[i], g.ys[j]);
      trip.emplace_back(
          row, row,
          Cplx(2.0 * ihx2 + 2.0 * ihy2 + y * y +
                   (stark_term ? g.xs[i] : 0.0) + vij,
               0) +
              shift);
      if (i > 0) trip.emplace_back(row, row - 1, Cplx(-ihx2, y / g.h_x));
      if (i + 1 < nx)
        trip.emplace_back(row, row + 1, Cplx(-ihx2, -y / g.h_x));
      if (j > 0) trip.emplace_back(row, row - nx, Cplx(-ihy2, 0));
      if (j + 1 < ny) trip.emplace_back(row, row + nx, Cplx(-ihy2, 0));
    }
  }
  SparseC M(N, N);
  M.setFromTriplets(trip.begin(), trip.end());
  M.makeCompressed();
  return M;
}

Eigen::MatrixXcd periodic_shifted_matrix(const Grid2D& g,
                                         const PotentialSpec* V, double lambda,
                                         double nu, int sign,
                                         bool stark_term) {
  if (!g.periodic())
    throw BackendUnsupported("dense symbol assembly is for the periodic backend");
  const int N = g.n_x * g.n_y;
  if (N > 4096)
    throw InvalidParameter("dense periodic assembly limited to 4096 unknowns");
  Eigen::MatrixXcd M(N, N);
  StateField e(g);
  for (int col = 0; col < N; ++col) {
    e.v.setZero();
    e.v(col % g.n_x, col / g.n_x) = 1.0;
    StateField he = apply_h0(e, stark_term);
    if (V && !V->is_zero()) {
      const int i = col % g.n_x, j = col / g.n_x;
      he.v(i, j) += V->V(g.xs[i], g.ys[j]);
    }
    M.col(col) = Eigen::Map<const Eigen::VectorXcd>(he.v.data(), N);
  }
  M.diagonal().array() += Cplx(-lambda, -nu * sign);
  return M;
}

} // namespace xf
