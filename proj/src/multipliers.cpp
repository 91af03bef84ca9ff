#include "xf/multipliers.hpp"

#include <cmath>

#include "xf/errors.hpp"
#include "xf/fft.hpp"

namespace xf {

MultiplierSymbol jdx_pow(double s) {
  return {MultiplierSymbol::Kind::jdx_pow, s};
}
MultiplierSymbol jdy_pow(double gamma) {
  if (!(gamma > 0 && gamma <= 1))
    throw InvalidParameter("fractional order must lie in (0, 1]");
  return {MultiplierSymbol::Kind::jdy_pow, gamma};
}
MultiplierSymbol abs_dy_pow(double gamma) {
  if (!(gamma > 0 && gamma <= 1))
    throw InvalidParameter("fractional order must lie in (0, 1]");
  return {MultiplierSymbol::Kind::abs_dy_pow, gamma};
}
MultiplierSymbol inv_abs_dx_plus_i() {
  return {MultiplierSymbol::Kind::inv_abs_dx_plus_i, 0};
}
MultiplierSymbol shift(double lambda) {
  return {MultiplierSymbol::Kind::shift, lambda};
}
MultiplierSymbol F_eps(double eps) {
  if (!(eps > 0 && eps <= 1))
    throw InvalidParameter("regularization must lie in (0, 1]");
  return {MultiplierSymbol::Kind::F_eps, eps};
}
MultiplierSymbol chi_t(double t) {
  if (!(t > 1)) throw InvalidParameter("clamp threshold requires t > 1");
  return {MultiplierSymbol::Kind::chi_t, t};
}

double chi_clamp(double x, double t) {
  const double r = std::abs(x);
  double out;
  if (r <= t) {
    out = r;
  } else if (r >= 2 * t) {
    out = 2 * t;
  } else {
    const double s = (r - t) / t;
    const double g = s + 4 * s * s * s - 7 * s * s * s * s +
                     3 * s * s * s * s * s;
    out = t * (1 + g);
  }
  return x < 0 ? -out : out;
}

StateField fourier_multiplier(const MultiplierSymbol& sym,
                              const StateField& f) {
  if (!f.grid.periodic())
    throw BackendUnsupported("Fourier symbols require the periodic backend");
  StateField out = f;
  using K = MultiplierSymbol::Kind;
  const double p = sym.param;
  switch (sym.kind) {
    case K::jdx_pow:
      apply_symbol_x(f.grid, out.v, [p](double xi, double) {
        return Cplx(std::pow(1.0 + xi * xi, 0.5 * p), 0);
      });
      break;
    case K::jdy_pow:
      apply_symbol_y(f.grid, out.v, [p](double, double eta) {
        return Cplx(std::pow(1.0 + eta * eta, 0.5 * p), 0);
      });
      break;
    case K::abs_dy_pow:
      apply_symbol_y(f.grid, out.v, [p](double, double eta) {
        return Cplx(std::pow(std::abs(eta), p), 0);
      });
      break;
    case K::inv_abs_dx_plus_i:
      apply_symbol_x(f.grid, out.v, [](double xi, double) {
        return Cplx(1.0 / std::sqrt(1.0 + xi * xi), 0);
      });
      break;
    case K::shift:
      apply_symbol_x(f.grid, out.v, [p](double xi, double) {
        return std::polar(1.0, p * xi);
      });
      break;
    case K::F_eps:
      apply_symbol_x(f.grid, out.v, [p](double xi, double) {
        const double j = std::sqrt(1.0 + xi * xi);
        return Cplx(j / (1.0 + p * j), 0);
      });
      break;
    case K::chi_t:
      apply_symbol_x(f.grid, out.v, [p](double xi, double) {
        return Cplx(chi_clamp(xi, p), 0);
      });
      break;
  }
  return out;
}

} // namespace xf
