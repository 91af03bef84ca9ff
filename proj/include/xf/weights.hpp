#pragma once

#include <cstdint>

namespace xf {

// Scalar weight pair rho, phi on the line. Outside (-a, a) both follow fixed
// closed forms; inside, C^3 bridges match value and first three derivatives
// at the junction points. rho bridges (-a, a/2] with a degree-7 two-point
// Hermite polynomial. phi's bridge is built on the log-slope: phi' = e^L with
// L a degree-6 polynomial (quintic Hermite data for log phi' at both ends
// plus a (x^2-a^2)^3 term tuned so the bridge increment matches), which keeps
// phi' > 0 for every admissible a; a plain polynomial interpolant of phi
// undershoots already at a = 2. Construction verifies phi' > 0 and rho > 0
// by sampling.
class WeightPair {
public:
  explicit WeightPair(double a);

  double a() const { return a_; }

  // order 0..3
  double rho(double x, int order = 0) const;
  double phi(double x, int order = 0) const;

private:
  double a_;
  double rho_c_[8];
  double phi_h_[6];     // quintic log-slope interpolant, powers of (x + a)
  double phi_t_ = 0;    // coefficient of the (x^2 - a^2)^3 term
  double phi_base_ = 0; // phi(-a)

  double log_slope(double x, int order) const;
  double bridge_phi(double x, int order) const;
};

enum class WeightFn { rho, phi, phi_d1, phi_d2, phi_d3 };

double weight_eval(WeightFn which, double x, double a);

// Smooth cutoff: 1 on |t| <= c, 0 on |t| >= 2c, bump-quotient smoothstep
// in between.
double cutoff_F(double t, double c);

struct WeightSpec {
  double a = 2.0;
  double delta = 1.0;
  double gamma = 0.4;

  double s_weight() const { return 0.5 + 0.5 * gamma; }
};

// Validates parameter ranges and constructs the bridges once (so a bad `a`
// fails here, not at first evaluation).
WeightSpec make_weight_spec(double a, double delta, double gamma);

} // namespace xf
