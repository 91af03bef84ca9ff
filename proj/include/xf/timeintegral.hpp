#pragma once

#include <vector>

#include "xf/field.hpp"
#include "xf/kernel.hpp"

namespace xf {

// Disjoint windows around the kernel's singular times t = n pi, half-width
// lambda^{-theta}; outside them |sin t| >= lambda^{-theta}/2.
struct TimeWindows {
  double theta;
  double lambda;

  double half_width() const { return std::pow(lambda, -theta); }
  bool in_window(double t) const;

  struct Segment {
    double t0, t1;
    bool windowed;
  };
  std::vector<Segment> partition(double T) const;
};

TimeWindows make_time_windows(double theta, double lambda);

struct TimeIntegralOptions {
  double tau = 1e-3;        // marching step inside windows
  double panel_max = 0.25;  // Gauss panel length off windows
  double budget = 1e4;      // largest admissible integration horizon
  double tail = 1e-8;       // required e^{-nu T}
  MehlerKernelSpec kernel;  // sin_floor/quad_tol for the off-window applies
};

// i * integral_0^T e^{-it(H0-lambda-i nu)} f dt, windows marched with the
// split propagator, the rest sampled by Gauss panels with direct kernel
// applies from t = 0. The drift center follows the classical cycloid so the
// integrand really is e^{-itH0}f.
StateField resolvent_time_integral(double lambda, double nu, double theta,
                                   const StateField& f, double T_max,
                                   const TimeIntegralOptions& opt = {});

} // namespace xf
