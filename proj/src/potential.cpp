#include "xf/potential.hpp"

#include <cmath>

#include "xf/errors.hpp"

namespace xf {

namespace {
double bump(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}
} // namespace

PotentialSpec make_strip_potential(double A0, double s_decay, double eta0,
                                   double beta) {
  if (!(A0 >= 0)) throw InvalidParameter("amplitude A0 must be nonnegative");
  if (!(s_decay > 0.5 && s_decay < 0.75))
    throw InvalidParameter("decay exponent must lie in (1/2, 3/4)");
  if (!(eta0 > 0 && eta0 < 1))
    throw InvalidParameter("strip half-width must lie in (0, 1)");

  PotentialSpec spec;
  spec.kind = PotentialKind::strip;
  spec.A0 = A0;
  spec.s_decay = s_decay;
  spec.eta0 = eta0;
  spec.beta = beta;
  const double s = s_decay;
  spec.V = [A0, s, eta0, beta](double x, double y) {
    return A0 * std::pow(jbracket(x), -2.0 * s) * bump((y - beta) / eta0);
  };
  spec.V_x = [A0, s, eta0, beta](double x, double y) {
    const double jx = jbracket(x);
    return A0 * (-2.0 * s) * x * std::pow(jx, -2.0 * s - 2.0) *
           bump((y - beta) / eta0);
  };

  // sup over x of <x>|d/dx <x>^{-2s}| is attained at x^2 = 1/(2s); the y-bump
  // only lowers it.
  const double u2 = 1.0 / (2.0 * s);
  spec.A1 = A0 * 2.0 * s * std::sqrt(u2) *
            std::pow(1.0 + u2, -(2.0 * s + 1.0) / 2.0);

  // <x>^{1/2-2s} is maximal at x = 0; the y factor <y>g((y-beta)/eta0) is
  // found by dense sampling of the strip.
  double ysup = 0;
  for (int i = 0; i <= 20000; ++i) {
    const double t = -1.0 + 2.0 * i / 20000.0;
    ysup = std::max(ysup, jbracket(beta + eta0 * t) * bump(t));
  }
  spec.A2 = A0 * ysup;
  return spec;
}

PotentialSpec gaussian_well_potential(double depth, double width) {
  if (!(depth > 0)) throw InvalidParameter("well depth must be positive");
  if (!(width > 0)) throw InvalidParameter("well width must be positive");
  PotentialSpec spec;
  spec.kind = PotentialKind::well;
  spec.A0 = depth;
  spec.eta0 = width;
  const double iw2 = 1.0 / (width * width);
  spec.V = [depth, iw2](double x, double y) {
    return -depth * std::exp(-(x * x + y * y) * iw2);
  };
  spec.V_x = [depth, iw2](double x, double y) {
    return depth * 2.0 * x * iw2 * std::exp(-(x * x + y * y) * iw2);
  };
  // sup <x>|V_x| along y = 0.
  double sup = 0;
  for (int i = 0; i <= 20000; ++i) {
    const double x = 10.0 * i / 20000.0;
    sup = std::max(sup, jbracket(x) * std::abs(spec.V_x(x, 0.0)));
  }
  spec.A1 = sup;
  spec.A2 = depth;
  return spec;
}

PotentialSpec zero_potential() {
  PotentialSpec spec;
  spec.V = [](double, double) { return 0.0; };
  spec.V_x = [](double, double) { return 0.0; };
  return spec;
}

Eigen::ArrayXXd potential_on_grid(const PotentialSpec& spec, const Grid2D& g) {
  Eigen::ArrayXXd out(g.n_x, g.n_y);
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i) out(i, j) = spec.V(g.xs[i], g.ys[j]);
  return out;
}

Eigen::ArrayXXd potential_dx_on_grid(const PotentialSpec& spec,
                                     const Grid2D& g) {
  Eigen::ArrayXXd out(g.n_x, g.n_y);
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i) out(i, j) = spec.V_x(g.xs[i], g.ys[j]);
  return out;
}

MeasuredAmplitudes measure_amplitudes(const PotentialSpec& spec,
                                      const Grid2D& g) {
  MeasuredAmplitudes m{0, 0, 0};
  const double s = spec.s_decay;
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i) {
      const double x = g.xs[i], y = g.ys[j];
      const double v = std::abs(spec.V(x, y));
      const double vx = std::abs(spec.V_x(x, y));
      m.a0_weighted = std::max(m.a0_weighted, std::pow(jbracket(x), 2.0 * s) * v);
      m.a1_weighted = std::max(m.a1_weighted, jbracket(x) * vx);
      m.a2_weighted = std::max(
          m.a2_weighted, std::sqrt(jbracket(x)) * jbracket(y) * v);
    }
  return m;
}

double weighted_sup(const PotentialSpec& spec, const Grid2D& g,
                    double x_exponent, bool with_y_weight) {
  double sup = 0;
  for (int j = 0; j < g.n_y; ++j)
    for (int i = 0; i < g.n_x; ++i) {
      const double x = g.xs[i], y = g.ys[j];
      double w = std::pow(jbracket(x), x_exponent);
      if (with_y_weight) w *= jbracket(y);
      sup = std::max(sup, w * std::abs(spec.V(x, y)));
    }
  return sup;
}

} // namespace xf
