#include "xf/oscillator.hpp"

#include <algorithm>
#include <cmath>

#include "xf/multipliers.hpp"
#include "xf/stats.hpp"

namespace xf {

namespace {

double bump_raw(double u) {
  if (u <= 1.0 || u >= 2.0) return 0.0;
  return std::exp(-1.0 / ((u - 1.0) * (2.0 - u)));
}

// Midpoint rule over the support; every derivative of the bump vanishes at
// the endpoints, so this converges faster than any power of the step.
template <typename F>
double midpoint_integral(F&& f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double s = 0;
  for (int k = 0; k < n; ++k) s += f(lo + (k + 0.5) * h);
  return s * h;
}

double bump_norm_constant() {
  static const double z = midpoint_integral(
      [](double u) {
        const double b = bump_raw(u);
        return b * b;
      },
      1.0, 2.0, 1 << 14);
  return std::sqrt(z);
}

} // namespace

double bump_phiA(double u) { return bump_raw(u) / bump_norm_constant(); }

AppendixAState make_appendix_state(const Grid2D& g, int n) {
  if (n < 0) throw InvalidParameter("mode index must be nonnegative");
  if (g.x_min > -2.0 * n || g.x_max < -2.0 * n + 1.0)
    throw DomainTooSmall("x-range does not contain the shifted bump support");
  StateField psi = hermite_psi(n, g); // throws DomainTooSmall on short y
  AppendixAState st;
  st.n = n;
  st.field = StateField(g);
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i)
      st.field.v(i, j) = psi.v(i, j) * bump_phiA(g.xs[i] + 2.0 * n + 1.0);
  const double nn = norm(st.field);
  if (!(nn > 0)) throw DomainTooSmall("state vanished on this grid");
  st.field.v /= nn;
  return st;
}

StateField gauge_U1(const StateField& f, int direction) {
  if (direction != 1 && direction != -1)
    throw InvalidParameter("gauge direction must be +1 or -1");
  if (!f.grid.periodic())
    throw BackendUnsupported("the gauge multiplier needs the periodic backend");
  StateField out = f;
  const double d = direction;
  apply_symbol_xy(out.v, f.grid, [d](double xi, double eta) {
    return std::exp(Cplx(0, d * xi * eta));
  });
  return out;
}

HermiteExpansion hermite_expand(const StateField& f, int max_modes) {
  if (max_modes < 0) throw InvalidParameter("mode count must be nonnegative");
  HermiteBasis basis(f.grid, max_modes);
  HermiteExpansion e;
  e.grid = f.grid;
  e.modes = basis.analyze(f.v);
  StateField recon(f.grid);
  recon.v = basis.synthesize(e.modes);
  StateField diff(f.grid);
  diff.v = f.v - recon.v;
  const double fn = norm(f);
  e.tail = fn > 0 ? norm(diff) / fn : 0.0;
  return e;
}

StateField hermite_reconstruct(const HermiteExpansion& e) {
  HermiteBasis basis(e.grid, int(e.modes.cols()) - 1);
  StateField out(e.grid);
  out.v = basis.synthesize(e.modes);
  return out;
}

StateField apply_Lk(int k, const HermiteExpansion& e, double tail_tol) {
  if (k != 1 && k != 2) throw InvalidParameter("only L_1 and L_2 exist");
  if (e.tail > tail_tol)
    throw TruncationTail("expansion tail " + std::to_string(e.tail) +
                         " exceeds the tolerance");
  const Grid2D& g = e.grid;
  const int m = int(e.modes.cols());

  // (B - i)^{-1} on mode n divides by x + 2n + 3/4 - i.
  Eigen::MatrixXcd r(g.n_x, m + k);
  r.setZero();
  for (int n = 0; n < m; ++n)
    for (int i = 0; i < g.n_x; ++i)
      r(i, n) = e.modes(i, n) / Cplx(g.xs[i] + 2.0 * n + 0.75, -1.0);

  // y psi_n = sqrt(n/2) psi_{n-1} + sqrt((n+1)/2) psi_{n+1}
  for (int t = 0; t < k; ++t) {
    Eigen::MatrixXcd next(g.n_x, m + k);
    next.setZero();
    for (int n = 0; n < m + t; ++n) {
      next.col(n + 1) += std::sqrt(0.5 * (n + 1)) * r.col(n);
      if (n > 0) next.col(n - 1) += std::sqrt(0.5 * n) * r.col(n);
    }
    r.swap(next);
  }

  HermiteBasis basis(g, m + k - 1);
  StateField out(g);
  out.v = basis.synthesize(r.leftCols(m + k));
  return out;
}

UnboundednessTable unboundedness_demo(const std::vector<int>& n_list,
                                      double y_half_extent) {
  if (n_list.empty()) throw InvalidParameter("empty mode list");
  int nmax = 0;
  for (int n : n_list) {
    if (n < 0 || n > 60)
      throw InvalidParameter("mode index must lie in [0, 60]");
    nmax = std::max(nmax, n);
  }
  if (2.0 * y_half_extent < 2.0 * std::sqrt(2.0 * nmax + 1.0) + 8.0)
    throw DomainTooSmall("y-extent cannot hold the classically allowed region");

  UnboundednessTable table;
  table.x_integral = midpoint_integral(
      [](double u) {
        const double b = bump_phiA(u);
        const double d = u - 0.25;
        return b * b / (d * d + 1.0);
      },
      1.0, 2.0, 1 << 14);

  std::vector<double> ns, vals;
  for (int n : n_list) {
    UnboundednessRow row;
    row.n = n;
    row.value = 0.5 * (2.0 * n + 1.0) * table.x_integral;
    row.bound = 16.0 * (2.0 * n + 1.0) / 130.0;
    row.ratio = row.value / (2.0 * n + 1.0);
    table.rows.push_back(row);
    ns.push_back(double(n));
    vals.push_back(row.value);
  }
  if (n_list.size() >= 2) table.slope = ols_fit(ns, vals).slope;
  return table;
}

RegularityReport dx_regularity_check(const StateField& psi,
                                     const std::vector<double>& eps_list) {
  if (!psi.grid.periodic())
    throw BackendUnsupported("F_eps needs the periodic backend");
  if (eps_list.size() < 3)
    throw InvalidParameter("need at least three eps samples");

  RegularityReport rep;
  rep.eps = eps_list;
  std::sort(rep.eps.begin(), rep.eps.end(), std::greater<double>());
  for (double e : rep.eps) {
    if (!(e > 0)) throw InvalidParameter("eps must be positive");
    rep.norms.push_back(norm(fourier_multiplier(F_eps(e), psi)));
  }

  // Neville extrapolation to eps = 0 through the smallest nodes; the norm is
  // smooth in eps, so a cubic recovers the limit far below the first-order
  // deficit eps*<xi>.
  const int m = int(rep.eps.size());
  const int use = std::min(4, m);
  std::vector<double> xe(use), ye(use);
  for (int i = 0; i < use; ++i) {
    xe[i] = rep.eps[m - 1 - i];
    ye[i] = rep.norms[m - 1 - i];
  }
  for (int level = 1; level < use; ++level)
    for (int i = 0; i < use - level; ++i)
      ye[i] = (xe[i + level] * ye[i] - xe[i] * ye[i + 1]) /
              (xe[i + level] - xe[i]);
  rep.limit_estimate = ye[0];

  // Classify on the small-eps half of the sweep: a genuine heavy tail keeps
  // growing there, while a square-integrable <D_x> psi flattens out.
  std::vector<double> invnu, ns;
  for (int i = m / 2; i < m; ++i) {
    invnu.push_back(1.0 / rep.eps[i]);
    ns.push_back(rep.norms[i]);
  }
  if (invnu.size() >= 2) rep.rate = ols_loglog(invnu, ns).slope;
  rep.diverging = rep.rate >= 0.1;
  return rep;
}

} // namespace xf
