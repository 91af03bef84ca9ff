#include "xf/timestep.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>

#include "xf/errors.hpp"
#include "xf/fft.hpp"
#include "xf/hamiltonian.hpp"

namespace xf {

StrangMarcher::StrangMarcher(const Grid2D& g, double tau)
    : grid_(g), tau_(tau) {
  if (!g.periodic())
    throw BackendUnsupported("the split propagator needs the periodic backend");
  if (!(tau > 0)) throw InvalidParameter("step size must be positive");
  half_a_.resize(g.n_x, g.n_y);
  for (int j = 0; j < g.n_y; ++j)
    for (int k = 0; k < g.n_x; ++k) {
      const double s = g.xi[k] + g.ys[j];
      half_a_(k, j) = std::polar(1.0, -0.5 * tau * s * s);
    }
  b_eta_.resize(g.n_y);
  for (int k = 0; k < g.n_y; ++k)
    b_eta_[k] = std::polar(1.0, -tau * g.eta[k] * g.eta[k]);
  b_x_.resize(g.n_x);
  for (int i = 0; i < g.n_x; ++i) b_x_[i] = std::polar(1.0, -tau * g.xs[i]);
}

void StrangMarcher::step(CArray& v) const {
  fft_x(v, false);
  v *= half_a_;
  fft_x(v, true);
  fft_y(v, false);
  for (int k = 0; k < grid_.n_y; ++k) v.col(k) *= b_eta_[k];
  fft_y(v, true);
  v.colwise() *= b_x_.array();
  fft_x(v, false);
  v *= half_a_;
  fft_x(v, true);
}

namespace {

StateField run_strang(double t, const StateField& f, int n_steps) {
  StateField out = f;
  StrangMarcher m(f.grid, t / n_steps);
  for (int k = 0; k < n_steps; ++k) m.step(out.v);
  return out;
}

StateField run_crank_nicolson(double t, const StateField& f, int n_steps) {
  if (f.grid.periodic())
    throw BackendUnsupported("Crank-Nicolson runs on the fd backend");
  const double tau = t / n_steps;
  const Grid2D& g = f.grid;
  SparseC H = fd_shifted_matrix(g, nullptr, 0.0, 0.0, +1);
  SparseC I(H.rows(), H.cols());
  I.setIdentity();
  SparseC Mp = I + Cplx(0, 0.5 * tau) * H;
  Mp.makeCompressed();
  Eigen::SparseLU<SparseC, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(Mp);
  lu.factorize(Mp);
  if (lu.info() != Eigen::Success)
    throw SingularSystem("Crank-Nicolson system factorization failed");
  Eigen::VectorXcd u = Eigen::Map<const Eigen::VectorXcd>(
      f.v.data(), f.grid.size());
  for (int k = 0; k < n_steps; ++k) {
    Eigen::VectorXcd rhs = 2.0 * u - Mp * u;
    u = lu.solve(rhs);
  }
  StateField out(g);
  Eigen::Map<Eigen::VectorXcd>(out.v.data(), g.size()) = u;
  return out;
}

} // namespace

StateField timestep_oracle(double t, const StateField& f, int n_steps,
                           TimestepMethod method) {
  if (t < 0) throw InvalidParameter("oracle propagates forward in time");
  if (t == 0) return f;
  if (n_steps < 100.0 * t)
    throw StepTooLarge("need at least " +
                       std::to_string(static_cast<int>(std::ceil(100 * t))) +
                       " steps for t = " + std::to_string(t));
  return method == TimestepMethod::strang_split
             ? run_strang(t, f, n_steps)
             : run_crank_nicolson(t, f, n_steps);
}

} // namespace xf
