#include "xf/kernel.hpp"

#include <cmath>

#include "xf/errors.hpp"
#include "xf/fft.hpp"
#include "xf/timestep.hpp"

namespace xf {

Eigen::Vector2d phase_b(double t) {
  return Eigen::Vector2d(-0.5 * std::sin(2 * t), 0.5 * (1 - std::cos(2 * t)));
}

Eigen::Vector2d phase_c(double t, KernelVariant variant) {
  const double c1 = (variant == KernelVariant::paper)
                        ? std::cos(2 * t)
                        : std::cos(2 * t) - 1.0;
  return Eigen::Vector2d(c1, t - std::sin(2 * t));
}

Eigen::Vector2d cycloid_drift_center(double t) {
  return Eigen::Vector2d(0.5 * (std::cos(2 * t) - 1.0),
                         t - 0.5 * std::sin(2 * t));
}

namespace {

// a(t) integrand: b(s)^2 + 2 b(s).A(c(s)) with A(x,y) = (-y/2, x/2).
template <typename CFun>
double a_integrand(double s, CFun&& cf) {
  const Eigen::Vector2d b = phase_b(s);
  const Eigen::Vector2d c = cf(s);
  return b.squaredNorm() - b[0] * c[1] + b[1] * c[0];
}

template <typename F>
double adaptive_simpson(F&& f, double lo, double hi, double tol, int depth,
                        double whole, double flo, double fmid, double fhi) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
  const double flm = f(lmid), frm = f(rmid);
  const double left = (mid - lo) / 6.0 * (flo + 4 * flm + fmid);
  const double right = (hi - mid) / 6.0 * (fmid + 4 * frm + fhi);
  if (depth <= 0) throw QuadratureFailure("phase integral tolerance unreachable");
  if (std::abs(left + right - whole) <= 15 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, lo, mid, tol / 2, depth - 1, left, flo, flm, fmid) +
         adaptive_simpson(f, mid, hi, tol / 2, depth - 1, right, fmid, frm, fhi);
}

template <typename F>
double integrate(F&& f, double lo, double hi, double tol) {
  if (hi == lo) return 0.0;
  const double flo = f(lo), fhi = f(hi), fmid = f(0.5 * (lo + hi));
  const double whole = (hi - lo) / 6.0 * (flo + 4 * fmid + fhi);
  return adaptive_simpson(f, lo, hi, tol, 48, whole, flo, fmid, fhi);
}

} // namespace

double phase_a(double t, const MehlerKernelSpec& spec) {
  if (t < 0) throw InvalidParameter("phase integral requires t >= 0");
  const KernelVariant v = spec.variant;
  return integrate(
      [v](double s) { return a_integrand(s, [v](double u) { return phase_c(u, v); }); },
      0.0, t, spec.a_tol);
}

KernelCoefficients kernel_coefficients(double t, const MehlerKernelSpec& spec) {
  KernelCoefficients k;
  k.a = phase_a(t, spec);
  k.b = phase_b(t);
  k.c = phase_c(t, spec.variant);
  return k;
}

KernelCoefficients cycloid_kernel_coefficients(double t, double a_tol) {
  KernelCoefficients k;
  k.a = integrate(
      [](double s) {
        return a_integrand(s, [](double u) { return cycloid_drift_center(u); });
      },
      0.0, t, a_tol);
  k.b = phase_b(t);
  k.c = cycloid_drift_center(t);
  return k;
}

namespace {

// Guard against phase aliasing: the w-sum evaluates the spectrum of
// g = e^{ip} f at frequencies u(x). Samples must either land inside the
// resolved band with negligible band-edge mass, or fold onto frequencies
// where the spectrum is below threshold.
void check_aliasing(const Grid2D& g, const CArray& gw, double ax, double bx,
                    double gx, double ay, double by, double gy, double tol) {
  CArray spec = gw;
  fft2(spec, false);
  const int nx = g.n_x, ny = g.n_y;
  // radial profile in max-norm index distance, then suffix max
  const int rmax = std::max(nx, ny) / 2;
  Eigen::VectorXd prof = Eigen::VectorXd::Zero(rmax + 1);
  double peak = 0;
  for (int j = 0; j < ny; ++j) {
    const int kj = std::abs((j <= ny / 2) ? j : j - ny);
    for (int i = 0; i < nx; ++i) {
      const int ki = std::abs((i <= nx / 2) ? i : i - nx);
      const int r = std::min(rmax, std::max(ki, kj));
      const double m = std::abs(spec(i, j));
      prof[r] = std::max(prof[r], m);
      peak = std::max(peak, m);
    }
  }
  for (int r = rmax - 1; r >= 0; --r) prof[r] = std::max(prof[r], prof[r + 1]);
  if (peak == 0) return;

  const double Lx = g.n_x * g.h_x, Ly = g.n_y * g.h_y;
  const double nyq_x = M_PI / g.h_x, nyq_y = M_PI / g.h_y;
  const double dkx = 2 * M_PI / Lx, dky = 2 * M_PI / Ly;

  double max_ux = 0, max_uy = 0;
  double worst_fold = 0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double u1 = ax * g.xs[i] + bx * g.ys[j] + gx;
      const double u2 = ay * g.xs[i] + by * g.ys[j] + gy;
      max_ux = std::max(max_ux, std::abs(u1));
      max_uy = std::max(max_uy, std::abs(u2));
      if (std::abs(u1) > nyq_x || std::abs(u2) > nyq_y) {
        const double f1 = u1 - 2 * nyq_x * std::round(u1 / (2 * nyq_x));
        const double f2 = u2 - 2 * nyq_y * std::round(u2 / (2 * nyq_y));
        const int r = std::min<int>(
            rmax, std::max(std::abs(f1) / dkx, std::abs(f2) / dky));
        worst_fold = std::max(worst_fold, prof[r] / peak);
      }
    }
  if (max_ux <= nyq_x && max_uy <= nyq_y) {
    // in-band everywhere: require negligible mass in the outer tenth of the band
    const int edge = static_cast<int>(0.9 * rmax);
    if (prof[edge] / peak > tol)
      throw AliasedPhase("spectral band-edge mass " +
                         std::to_string(prof[edge] / peak) +
                         " above guard threshold; refine the grid");
    return;
  }
  if (worst_fold > tol)
    throw AliasedPhase(
        "phase samples fold onto occupied frequencies (relative magnitude " +
        std::to_string(worst_fold) + "); refine the grid or shrink the box");
}

} // namespace

StateField apply_kernel_with(double t, const StateField& f,
                             const KernelCoefficients& coeff,
                             const MehlerKernelSpec& spec) {
  const Grid2D& g = f.grid;
  const double st = std::sin(t);
  if (std::abs(st) < spec.sin_floor)
    throw NearSingularTime("|sin t| = " + std::to_string(std::abs(st)) +
                           " below floor " + std::to_string(spec.sin_floor));
  const double ct = std::cos(t) / st; // cot t
  const double c1 = coeff.c[0], c2 = coeff.c[1];
  const double b1 = coeff.b[0], b2 = coeff.b[1];

  // total phase: q(x) + p(w) + w.u(x), with
  //   p(w)  = (cot/4)|w|^2 + w1 w2 / 2
  //   u1(x) = -(cot/2)(x-c1) + (y-c2)/2
  //   u2(x) = -(cot/2)(y-c2) - (x-c1)/2
  //   q(x)  = -a - xy/2 + b.x + c1 y/2 - c2 x/2 + (cot/4)((x-c1)^2+(y-c2)^2)
  const int nx = g.n_x, ny = g.n_y;
  CArray gw(nx, ny);
  for (int j = 0; j < ny; ++j) {
    const double w2 = g.ys[j];
    const double wy = quad_weight_y(g, j);
    for (int i = 0; i < nx; ++i) {
      const double w1 = g.xs[i];
      const double p = 0.25 * ct * (w1 * w1 + w2 * w2) + 0.5 * w1 * w2;
      gw(i, j) = f.v(i, j) * std::polar(quad_weight_x(g, i) * wy, p);
    }
  }

  const double ax = -0.5 * ct, bx = 0.5, gx = 0.5 * ct * c1 - 0.5 * c2;
  const double ay = -0.5, by = -0.5 * ct, gy = 0.5 * c1 + 0.5 * ct * c2;
  check_aliasing(g, gw, ax, bx, gx, ay, by, gy, spec.quad_tol);

  StateField out(g);
  const Cplx pref = 1.0 / (Cplx(0, 4 * M_PI) * st);
  Eigen::MatrixXcd B(ny, nx), T(nx, nx);
  Eigen::VectorXcd avec(nx);
  const Eigen::Map<const Eigen::MatrixXcd> G(gw.data(), nx, ny);
  for (int j = 0; j < ny; ++j) {
    const double y = g.ys[j];
    // B(m, i) = e^{i w2_m u2(x_i, y_j)} built as geometric sequences
    for (int i = 0; i < nx; ++i) {
      const double u2 = ay * g.xs[i] + by * y + gy;
      const Cplx step = std::polar(1.0, g.h_y * u2);
      Cplx cur = std::polar(1.0, g.ys[0] * u2);
      for (int m = 0; m < ny; ++m) {
        B(m, i) = cur;
        cur *= step;
      }
    }
    T.noalias() = G * B;
    for (int i = 0; i < nx; ++i) {
      const double u1 = ax * g.xs[i] + bx * y + gx;
      const Cplx step = std::polar(1.0, g.h_x * u1);
      Cplx cur = std::polar(1.0, g.xs[0] * u1);
      for (int k = 0; k < nx; ++k) {
        avec[k] = cur;
        cur *= step;
      }
      const Cplx s = (avec.transpose() * T.col(i)).value();
      const double x = g.xs[i];
      const double X = x - c1, Y = y - c2;
      const double q = -coeff.a - 0.5 * x * y + b1 * x + b2 * y + 0.5 * c1 * y -
                       0.5 * c2 * x + 0.25 * ct * (X * X + Y * Y);
      out.v(i, j) = pref * std::polar(1.0, q) * s;
    }
  }
  return out;
}

StateField apply_free_propagator(double t, const StateField& f,
                                 const MehlerKernelSpec& spec) {
  return apply_kernel_with(t, f, kernel_coefficients(t, spec), spec);
}

KernelValidation validate_kernel(
    const std::vector<double>& t_list,
    const std::vector<std::pair<std::string, StateField>>& data_list,
    const MehlerKernelSpec& spec) {
  for (double t : t_list)
    if (std::abs(std::sin(t)) < 1e-2)
      throw InvalidParameter("validation times must avoid |sin t| < 1e-2");

  KernelValidation out;
  out.verdict = KernelVerdict::inconclusive;
  MehlerKernelSpec sp = spec;
  for (double t : t_list) {
    for (const auto& [label, f] : data_list) {
      const int n_steps =
          std::max(200, static_cast<int>(std::ceil(1000 * t)));
      const StateField ref = timestep_oracle(
          t, f, n_steps,
          f.grid.periodic() ? TimestepMethod::strang_split
                            : TimestepMethod::crank_nicolson);
      KernelValidation::Row row;
      row.t = t;
      row.data_label = label;
      sp.variant = KernelVariant::paper;
      row.err_paper = rel_l2_error(apply_free_propagator(t, f, sp), ref);
      sp.variant = KernelVariant::shifted;
      row.err_shifted = rel_l2_error(apply_free_propagator(t, f, sp), ref);
      row.err_cycloid = rel_l2_error(
          apply_kernel_with(t, f, cycloid_kernel_coefficients(t, sp.a_tol), sp),
          ref);
      out.worst_paper = std::max(out.worst_paper, row.err_paper);
      out.worst_shifted = std::max(out.worst_shifted, row.err_shifted);
      out.worst_cycloid = std::max(out.worst_cycloid, row.err_cycloid);
      out.rows.push_back(std::move(row));
    }
  }
  const double cap = 0.05;
  if (out.worst_paper > cap && out.worst_shifted > cap)
    out.verdict = KernelVerdict::inconclusive;
  else if (out.worst_paper <= out.worst_shifted)
    out.verdict = KernelVerdict::paper;
  else
    out.verdict = KernelVerdict::shifted;
  return out;
}

} // namespace xf
