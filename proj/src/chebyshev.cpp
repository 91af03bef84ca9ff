#include "xf/chebyshev.hpp"

#include <cmath>
#include <random>

#include "xf/errors.hpp"

namespace xf {

namespace {

Eigen::VectorXd fit_degree(const std::function<double(double)>& f, double lo,
                           double hi, int degree) {
  const int N = degree + 1;
  Eigen::VectorXd fv(N), theta(N);
  for (int j = 0; j < N; ++j) {
    theta[j] = M_PI * (j + 0.5) / N;
    const double s = std::cos(theta[j]);
    fv[j] = f(0.5 * (hi - lo) * s + 0.5 * (hi + lo));
  }
  Eigen::VectorXd c(N);
  for (int k = 0; k < N; ++k) {
    double acc = 0;
    for (int j = 0; j < N; ++j) acc += fv[j] * std::cos(k * theta[j]);
    c[k] = 2.0 * acc / N;
  }
  return c;
}

double eval_mapped(const Eigen::VectorXd& c, double s) {
  double b1 = 0, b2 = 0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
    const double b = 2.0 * s * b1 - b2 + c[k];
    b2 = b1;
    b1 = b;
  }
  return s * b1 - b2 + 0.5 * c[0];
}

} // namespace

ChebyshevApprox chebyshev_fit(const std::function<double(double)>& f,
                              double lo, double hi, double tol,
                              int max_degree) {
  if (!(hi > lo)) throw InvalidParameter("empty approximation interval");
  for (int degree = 32;; degree *= 2) {
    if (degree > max_degree)
      throw ApproximationDegreeExceeded(
          "Chebyshev degree beyond " + std::to_string(max_degree) +
          " needed for tolerance " + std::to_string(tol));
    Eigen::VectorXd c = fit_degree(f, lo, hi, degree);
    const int n_check = 4 * degree + 17;
    double err = 0;
    for (int i = 0; i <= n_check; ++i) {
      const double t = lo + (hi - lo) * i / n_check;
      const double s = (2.0 * t - (hi + lo)) / (hi - lo);
      err = std::max(err, std::abs(eval_mapped(c, s) - f(t)));
    }
    if (err <= tol) {
      ChebyshevApprox ap;
      ap.lo = lo;
      ap.hi = hi;
      ap.coeffs = std::move(c);
      ap.max_error = err;
      return ap;
    }
  }
}

double chebyshev_eval(const ChebyshevApprox& ap, double t) {
  const double s = (2.0 * t - (ap.hi + ap.lo)) / (ap.hi - ap.lo);
  return eval_mapped(ap.coeffs, s);
}

std::pair<double, double> spectral_range(const HamiltonianSpec& spec,
                                         int iters, std::uint32_t seed) {
  const Grid2D& g = spec.grid;
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  const auto random_state = [&]() {
    StateField v(g);
    for (int j = 0; j < g.n_y; ++j)
      for (int i = 0; i < g.n_x; ++i) v.v(i, j) = Cplx(nd(rng), nd(rng));
    return normalized(std::move(v));
  };

  const auto dominant = [&](double shift) {
    StateField v = random_state();
    double rayleigh = 0;
    for (int it = 0; it < iters; ++it) {
      StateField u = apply_h(v, spec);
      if (shift != 0.0) u.v -= shift * v.v;
      rayleigh = inner(v, u).real();
      const double nu = norm(u);
      if (nu == 0) break;
      u.v /= nu;
      v = std::move(u);
    }
    return rayleigh;
  };

  const double e1 = dominant(0.0);
  const double e2 = dominant(e1) + e1;
  double lo = std::min(e1, e2), hi = std::max(e1, e2);
  const double pad = 0.05 * (hi - lo) + 1.0;
  return {lo - pad, hi + pad};
}

StateField apply_function_of_h(const HamiltonianSpec& spec,
                               const ChebyshevApprox& ap,
                               const StateField& f) {
  require_same_grid(spec.grid, f.grid);
  const double scale = 2.0 / (ap.hi - ap.lo);
  const double off = (ap.hi + ap.lo) / (ap.hi - ap.lo);
  const auto mapped = [&](const StateField& u) {
    StateField hu = apply_h(u, spec);
    hu.v = scale * hu.v - off * u.v;
    return hu;
  };
  StateField b1(f.grid), b2(f.grid);
  for (int k = static_cast<int>(ap.coeffs.size()) - 1; k >= 1; --k) {
    StateField t = mapped(b1);
    t.v = 2.0 * t.v - b2.v + ap.coeffs[k] * f.v;
    b2 = std::move(b1);
    b1 = std::move(t);
  }
  StateField out = mapped(b1);
  out.v += -b2.v + 0.5 * ap.coeffs[0] * f.v;
  return out;
}

} // namespace xf
