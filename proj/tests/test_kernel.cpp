#include <doctest.h>

#include <cmath>
#include <complex>

#include "xf/errors.hpp"
#include "xf/field.hpp"
#include "xf/grid.hpp"
#include "xf/kernel.hpp"
#include "xf/timestep.hpp"

using namespace xf;

namespace {

Eigen::Vector2d b_closed(double t) {
  return {-std::sin(2 * t) / 2, (1 - std::cos(2 * t)) / 2};
}

Eigen::Vector2d c_closed(double t, KernelVariant v) {
  Eigen::Vector2d c{std::cos(2 * t) - 1, t - std::sin(2 * t)};
  if (v == KernelVariant::paper) c[0] += 1;
  return c;
}

// Plain fixed-step Simpson of the phase-rate b^2 - b1 c2' ... the integrand
// reduces to b.b - b1 c2 + b2 c1 with these closed forms.
double a_simpson(double t, KernelVariant v, int panels) {
  auto f = [&](double s) {
    Eigen::Vector2d b = b_closed(s), c = c_closed(s, v);
    return b.squaredNorm() - b[0] * c[1] + b[1] * c[0];
  };
  const double h = t / (2 * panels);
  double acc = f(0) + f(t);
  for (int k = 1; k < 2 * panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return acc * h / 3;
}

// The kernel written out literally, no factorization: used as the reference
// for the fast apply on tiny grids.
StateField direct_kernel_sum(double t, const StateField& f,
                             const KernelCoefficients& k) {
  const Grid2D& g = f.grid;
  const double cot = std::cos(t) / std::sin(t);
  const Cplx pref = 1.0 / (Cplx(0, 4 * M_PI) * std::sin(t));
  StateField out(g);
  for (int j = 0; j < g.n_y; ++j) {
    const double x2 = g.ys[j];
    for (int i = 0; i < g.n_x; ++i) {
      const double x1 = g.xs[i];
      Cplx acc = 0;
      for (int jj = 0; jj < g.n_y; ++jj) {
        const double w2 = g.ys[jj];
        const double wq = quad_weight_y(g, jj);
        for (int ii = 0; ii < g.n_x; ++ii) {
          const double w1 = g.xs[ii];
          // A(v) = (-v2/2, v1/2); phases assembled exactly as documented
          const double cAx = (k.c[1] * x1 - k.c[0] * x2) / 2;
          const double wAxc =
              (w2 * (x1 - k.c[0]) - w1 * (x2 - k.c[1])) / 2;
          const double q1 = x1 - k.c[0] - w1, q2 = x2 - k.c[1] - w2;
          double phase = -k.a - x1 * x2 / 2 + k.b[0] * x1 + k.b[1] * x2 -
                         cAx - wAxc + cot * (q1 * q1 + q2 * q2) / 4 +
                         w1 * w2 / 2;
          acc += std::polar(1.0, phase) * f.v(ii, jj) *
                 (quad_weight_x(g, ii) * wq);
        }
      }
      out.v(i, j) = pref * acc;
    }
  }
  return out;
}

} // namespace

TEST_CASE("linear phase coefficients satisfy their closed-form identities") {
  for (double t : {0.3, 0.7, 1.2, 2.0, 2.9}) {
    CHECK(phase_b(t).norm() ==
          doctest::Approx(std::abs(std::sin(t))).epsilon(1e-13));
    CHECK((phase_b(t) - b_closed(t)).norm() < 1e-14);
    Eigen::Vector2d gap = phase_c(t, KernelVariant::paper) -
                          phase_c(t, KernelVariant::shifted);
    CHECK((gap - Eigen::Vector2d{1, 0}).norm() < 1e-14);
  }
  CHECK(phase_b(0).norm() < 1e-15);
}

TEST_CASE("the cycloid drift center follows the classical flow") {
  // center velocity equals twice the kinetic coefficient (mass one half)
  const double h = 1e-5;
  for (double t : {0.4, 1.1, 2.3}) {
    Eigen::Vector2d rate =
        (cycloid_drift_center(t + h) - cycloid_drift_center(t - h)) / (2 * h);
    CHECK((rate - 2 * b_closed(t)).norm() < 1e-9);
  }
  Eigen::Vector2d half = cycloid_drift_center(M_PI / 2);
  CHECK((half - Eigen::Vector2d{-1, M_PI / 2}).norm() < 1e-14);
  Eigen::Vector2d full = cycloid_drift_center(M_PI);
  CHECK((full - Eigen::Vector2d{0, M_PI}).norm() < 1e-13);
}

TEST_CASE("the accumulated phase matches an independent quadrature") {
  MehlerKernelSpec spec;
  for (double t : {0.7, 1.3}) {
    for (KernelVariant v : {KernelVariant::paper, KernelVariant::shifted}) {
      spec.variant = v;
      CHECK(std::abs(phase_a(t, spec) - a_simpson(t, v, 4000)) < 1e-8);
    }
  }
  CHECK_THROWS_AS(phase_a(-0.5, MehlerKernelSpec{}), InvalidParameter);
}

TEST_CASE("the factorized apply reproduces the literal kernel sum") {
  Grid2D g = build_square_grid(6, 16, Backend::periodic_spectral);
  StateField f = gaussian_state(g, 0.3, -0.4, 1.2);
  MehlerKernelSpec spec;
  spec.quad_tol = 2; // tiny grid, the guard would trip on resolution alone
  for (double t : {0.5, 1.0}) {
    for (KernelVariant v : {KernelVariant::paper, KernelVariant::shifted}) {
      spec.variant = v;
      KernelCoefficients k = kernel_coefficients(t, spec);
      StateField fast = apply_kernel_with(t, f, k, spec);
      CHECK(rel_l2_error(fast, direct_kernel_sum(t, f, k)) < 1e-12);
    }
    KernelCoefficients k = cycloid_kernel_coefficients(t);
    StateField fast = apply_kernel_with(t, f, k, spec);
    CHECK(rel_l2_error(fast, direct_kernel_sum(t, f, k)) < 1e-12);
  }
}

TEST_CASE("only the cycloid coefficients reproduce the propagator") {
  Grid2D g = build_square_grid(8, 64, Backend::periodic_spectral);
  StateField f = gaussian_state(g, 0, 0, 1.5);
  const double t = 0.5;
  StateField ref = timestep_oracle(t, f, 500, TimestepMethod::strang_split);
  MehlerKernelSpec spec;

  StateField cyc = apply_kernel_with(t, f, cycloid_kernel_coefficients(t), spec);
  CHECK(rel_l2_error(cyc, ref) < 1e-3);
  CHECK(std::abs(norm(cyc) / norm(f) - 1.0) < 1e-6);

  spec.variant = KernelVariant::paper;
  StateField pap = apply_kernel_with(t, f, kernel_coefficients(t, spec), spec);
  CHECK(rel_l2_error(pap, ref) > 0.3);
  spec.variant = KernelVariant::shifted;
  StateField shf = apply_kernel_with(t, f, kernel_coefficients(t, spec), spec);
  CHECK(rel_l2_error(shf, ref) > 0.3);
}

TEST_CASE("validation compares both variants against the stepping oracle") {
  Grid2D g = build_square_grid(8, 64, Backend::periodic_spectral);
  std::vector<std::pair<std::string, StateField>> data;
  data.emplace_back("centered", gaussian_state(g, 0, 0, 1.5));
  KernelValidation rep = validate_kernel({0.5}, data, MehlerKernelSpec{});
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].err_cycloid < 1e-3);
  CHECK(rep.rows[0].err_paper > 0.3);
  CHECK(rep.rows[0].err_shifted > 0.3);
  CHECK(rep.verdict == KernelVerdict::inconclusive);
  CHECK(rep.worst_paper == doctest::Approx(rep.rows[0].err_paper));
  CHECK(rep.worst_cycloid == doctest::Approx(rep.rows[0].err_cycloid));

  CHECK_THROWS_AS(validate_kernel({3.14}, data, MehlerKernelSpec{}),
                  InvalidParameter);
}

TEST_CASE("near-singular times and unresolved phases are rejected") {
  Grid2D g = build_square_grid(8, 64, Backend::periodic_spectral);
  StateField f = gaussian_state(g, 0, 0, 1.5);
  CHECK_THROWS_AS(
      apply_kernel_with(3.141, f, cycloid_kernel_coefficients(3.141),
                        MehlerKernelSpec{}),
      NearSingularTime);

  Grid2D coarse = build_square_grid(8, 32, Backend::periodic_spectral);
  StateField fc = gaussian_state(coarse, 0, 0, 1.0);
  CHECK_THROWS_AS(
      apply_kernel_with(0.2, fc, cycloid_kernel_coefficients(0.2),
                        MehlerKernelSpec{}),
      AliasedPhase);
}
