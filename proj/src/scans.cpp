#include "xf/scans.hpp"

#include <cmath>
#include <limits>

#include "xf/errors.hpp"

namespace xf {

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (!(lo > 0 && hi > lo) || n < 1)
    throw InvalidParameter("log spacing needs 0 < lo < hi");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double r = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) out[i] = lo * std::exp(r * i);
  return out;
}

std::vector<double> lin_spaced(double lo, double hi, int n) {
  if (n < 1) throw InvalidParameter("need at least one sample");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

namespace {
ScanPoint norm_point(const HamiltonianSpec& op, double lambda, double nu,
                     const WeightDescriptor& wl, const WeightDescriptor& wr,
                     std::uint32_t seed) {
  ResolventQuery q;
  q.lambda = lambda;
  q.nu = nu;
  q.weight_left = wl;
  q.weight_right = wr;
  NormEstimate e = weighted_norm(op, q, seed);
  return {lambda, nu, e.value, e.iterations, e.residual};
}
} // namespace

ScanResult decay_scan(const Grid2D& g, double delta, double nu,
                      const std::vector<double>& lambda_grid, double theta,
                      std::uint32_t seed) {
  if (!(delta > 0 && delta <= 2))
    throw ValidationError("delta", "must be in (0, 2]");
  if (lambda_grid.empty()) throw InvalidParameter("empty lambda grid");
  for (double l : lambda_grid)
    if (l < 10) throw InvalidParameter("decay scan expects lambda >= 10");

  const HamiltonianSpec op = make_hamiltonian(g);
  const WeightDescriptor w = weight_r_pow(g, delta);
  ScanResult out;
  for (double l : lambda_grid) {
    out.points.push_back(norm_point(op, l, nu, w, w, seed));
    out.envelope.push_back(
        std::pow(std::pow(l, -theta) + (1 + nu) / l +
                     (1 + 1 / (nu * nu)) * std::pow(l, theta - 1),
                 0.5 * delta) /
        nu);
  }
  double lmin = lambda_grid.front(), lmax = lambda_grid.front();
  for (double l : lambda_grid) {
    lmin = std::min(lmin, l);
    lmax = std::max(lmax, l);
  }
  if (lambda_grid.size() >= 6 && lmax >= 10 * lmin) {
    std::vector<double> xs, ys;
    for (const auto& p : out.points) {
      xs.push_back(p.lambda);
      ys.push_back(p.norm);
    }
    out.fitted_exponent = ols_loglog(xs, ys, seed);
  }
  return out;
}

ScanResult mourre_scan(const Grid2D& g, double R,
                       const std::vector<double>& lambda_grid,
                       const std::vector<double>& nu_grid, double beta,
                       std::uint32_t seed) {
  if (lambda_grid.empty() || nu_grid.empty())
    throw InvalidParameter("empty scan grid");
  for (double l : lambda_grid)
    if (std::abs(l) > R)
      throw InvalidParameter("lambda grid must stay within [-R, R]");
  for (double v : nu_grid)
    if (!(v >= 1e-3 && v <= 1))
      throw InvalidParameter("nu grid must stay within [1e-3, 1]");

  const HamiltonianSpec op = make_hamiltonian(g);
  const WeightDescriptor w = weight_inv_dx(beta);
  ScanResult out;
  double nu_min = nu_grid.front(), nu_ref = nu_grid.front();
  for (double v : nu_grid) {
    nu_min = std::min(nu_min, v);
    if (std::abs(std::log10(v) + 1) < std::abs(std::log10(nu_ref) + 1))
      nu_ref = v; // closest to 1e-1
  }
  double c_R = 0, worst_ratio = 0, bound_margin = 0;
  for (double l : lambda_grid) {
    double n_min = 0, n_ref = 0;
    for (double v : nu_grid) {
      ScanPoint p = norm_point(op, l, v, w, w, seed);
      out.points.push_back(p);
      c_R = std::max(c_R, p.norm);
      bound_margin = std::max(bound_margin, p.norm * v / (w.sup * w.sup));
      if (v == nu_min) n_min = p.norm;
      if (v == nu_ref) n_ref = p.norm;
    }
    if (n_ref > 0) worst_ratio = std::max(worst_ratio, n_min / n_ref);
  }
  out.constants["C_R"] = c_R;
  out.constants["uniformity_ratio"] = worst_ratio;
  out.constants["spectral_bound_margin"] = bound_margin;
  return out;
}

ScanResult weighted_mourre_scan(const Grid2D& g, double gamma, double eta0,
                                double beta, double R,
                                const std::vector<double>& lambda_grid,
                                const std::vector<double>& nu_grid,
                                std::uint32_t seed) {
  if (lambda_grid.empty() || nu_grid.empty())
    throw InvalidParameter("empty scan grid");
  for (double l : lambda_grid)
    if (std::abs(l) > R)
      throw InvalidParameter("lambda grid must stay within [-R, R]");

  const HamiltonianSpec op = make_hamiltonian(g);
  const WeightDescriptor ws = weight_strip(g, gamma, eta0, beta);
  const WeightDescriptor ws_half = weight_strip(g, gamma, 0.5 * eta0, beta);
  const WeightDescriptor wd = weight_inv_dx(0);

  ScanResult out;
  double C = 0, C_half = 0, B = 0, bound_margin = 0;
  for (double l : lambda_grid) {
    for (double v : nu_grid) {
      // one factorization serves all three weight pairs at this (lambda, nu)
      ScanPoint p = norm_point(op, l, v, ws, ws, seed);
      out.points.push_back(p);
      C = std::max(C, p.norm);
      bound_margin = std::max(bound_margin, p.norm * v / (ws.sup * ws.sup));
      ScanPoint ph = norm_point(op, l, v, ws_half, ws_half, seed);
      C_half = std::max(C_half, ph.norm);
      ScanPoint pb = norm_point(op, l, v, ws, wd, seed);
      B = std::max(B, pb.norm);
      bound_margin = std::max(bound_margin, pb.norm * v / (ws.sup * wd.sup));
    }
  }
  out.constants["C_Rg"] = C;
  out.constants["C_Rg_half_eta"] = C_half;
  out.constants["B_Rg"] = B;
  out.constants["eta_half_ratio"] = C_half > 0 ? C / C_half : 0;
  out.constants["spectral_bound_margin"] = bound_margin;
  return out;
}

Certificate contraction_certificate(const Grid2D& g, const PotentialSpec& V,
                                    double gamma, double R, double C_Rg,
                                    double B_Rg,
                                    const std::vector<double>& nu_grid,
                                    std::uint32_t seed) {
  if (!(C_Rg > 0) || !(B_Rg > 0) || !std::isfinite(C_Rg) ||
      !std::isfinite(B_Rg))
    throw MissingConstants(
        "certificate needs measured weighted-scan constants");
  Certificate cert;
  cert.sup_norm = weighted_sup(V, g, 1.0 + gamma);
  cert.c = std::pow(V.eta0, 2 * gamma) * C_Rg * cert.sup_norm;
  cert.pass = cert.c < 1;
  cert.bound = cert.pass ? B_Rg / (1 - cert.c)
                         : std::numeric_limits<double>::quiet_NaN();

  const HamiltonianSpec op = make_hamiltonian(g, V);
  const WeightDescriptor ws = weight_strip(g, gamma, V.eta0, V.beta);
  const std::vector<double> lams = {-R, -0.5 * R, 0, 0.5 * R, R};
  for (double l : lams)
    for (double v : nu_grid) {
      ScanPoint p = norm_point(op, l, v, ws, ws, seed);
      cert.direct_scan.points.push_back(p);
      cert.direct_sup = std::max(cert.direct_sup, p.norm);
    }
  cert.consistent = !cert.pass || cert.direct_sup <= 1.5 * cert.bound;
  return cert;
}

} // namespace xf
