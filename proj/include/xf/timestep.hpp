#pragma once

#include "xf/field.hpp"

namespace xf {

enum class TimestepMethod { strang_split, crank_nicolson };

// Second-order propagation of i d/dt u = H0 u. strang_split needs the
// periodic backend (splits (D_x+y)^2 from D_y^2 + x, each diagonal in a mixed
// representation); crank_nicolson needs the fd backend. Requires
// n_steps >= 100 t.
StateField timestep_oracle(double t, const StateField& f, int n_steps,
                           TimestepMethod method);

// Fixed-step Strang walker for callers that need the state at every step.
class StrangMarcher {
public:
  StrangMarcher(const Grid2D& g, double tau);
  double tau() const { return tau_; }
  void step(CArray& v) const;

private:
  Grid2D grid_;
  double tau_;
  CArray half_a_;          // e^{-i tau/2 (xi+y)^2}, (n_x, n_y)
  Eigen::VectorXcd b_eta_; // e^{-i tau eta^2}
  Eigen::VectorXcd b_x_;   // e^{-i tau x}
};

} // namespace xf
