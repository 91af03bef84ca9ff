#pragma once

#include <Eigen/Core>
#include <functional>

#include "xf/grid.hpp"

namespace xf {

enum class PotentialKind { none, strip, well };

// Strip-supported short-range potential. The profile callables are grid-free;
// A0/A1/A2 record the decay amplitudes sup<x>^2s|V|, sup<x>|V_x|,
// sup<x>^{1/2}<y>|V|.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::none;
  double A0 = 0;
  double A1 = 0;
  double A2 = 0;
  double s_decay = 0.6;
  double eta0 = 0.5;
  double beta = 0;
  std::function<double(double, double)> V;
  std::function<double(double, double)> V_x;

  bool is_zero() const { return kind == PotentialKind::none || A0 == 0; }
};

// V(x,y) = A0 <x>^{-2s} g((y-beta)/eta0) with the standard bump
// g(t) = exp(1 - 1/(1-t^2)) on |t|<1, zero outside.
PotentialSpec make_strip_potential(double A0, double s_decay, double eta0,
                                   double beta);

// Radial attractive well -depth exp(-r^2/width^2); the control potential for
// eigenvalue experiments. A0 records the depth, eta0 the width.
PotentialSpec gaussian_well_potential(double depth, double width);

PotentialSpec zero_potential();

Eigen::ArrayXXd potential_on_grid(const PotentialSpec& spec, const Grid2D& g);
Eigen::ArrayXXd potential_dx_on_grid(const PotentialSpec& spec,
                                     const Grid2D& g);

// Grid suprema of the weighted amplitudes, for checking the recorded A0/A1/A2
// actually dominate the discretized potential.
struct MeasuredAmplitudes {
  double a0_weighted; // sup <x>^2s |V|
  double a1_weighted; // sup <x> |V_x|
  double a2_weighted; // sup <x>^{1/2} <y> |V|
};
MeasuredAmplitudes measure_amplitudes(const PotentialSpec& spec,
                                      const Grid2D& g);

// sup over the grid of <x>^p |V|, optionally with an extra <y> factor.
double weighted_sup(const PotentialSpec& spec, const Grid2D& g,
                    double x_exponent, bool with_y_weight = false);

inline double jbracket(double u) { return std::sqrt(1.0 + u * u); }

} // namespace xf
