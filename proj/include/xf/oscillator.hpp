#pragma once

#include <vector>

#include <Eigen/Core>

#include "xf/field.hpp"
#include "xf/hermite.hpp"

namespace xf {

// Normalized smooth bump supported in (1,2), centered at 3/2; the square
// integrates to one.
double bump_phiA(double u);

// Psi_n(x,y) = psi_n(y) phiA(x + 2n + 1): oscillator mode n in y times the
// bump pushed to x in (-2n, -2n+1). The sampled product is renormalized on
// the grid so the stored field is exactly unit.
struct AppendixAState {
  int n = 0;
  StateField field;
};
AppendixAState make_appendix_state(const Grid2D& g, int n);

// Double-Fourier gauge e^{+- i xi eta}; direction +1 or -1.
StateField gauge_U1(const StateField& f, int direction);

// Truncated mode representation f = sum_n g_n(x) psi_n(y).
struct HermiteExpansion {
  Grid2D grid;
  Eigen::MatrixXcd modes; // (n_x, max_modes+1), column n holds g_n
  double tail = 0;        // relative mass outside the retained modes
};
HermiteExpansion hermite_expand(const StateField& f, int max_modes);
StateField hermite_reconstruct(const HermiteExpansion& e);

// L_k = y^k (y^2 + D_y^2 + x - 1/4 - i)^{-1} for k in {1,2}. The resolvent
// is diagonal in the mode representation (divide mode n by x + 2n + 3/4 - i)
// and y^k couples neighboring modes through the ladder recurrence; no linear
// solve is involved.
StateField apply_Lk(int k, const HermiteExpansion& e, double tail_tol = 1e-8);

struct UnboundednessRow {
  int n = 0;
  double value = 0; // ||L_1 Psi_n||^2 from the exact per-mode form
  double bound = 0; // 16 (2n+1) / 130
  double ratio = 0; // value / (2n+1), n-independent
};
struct UnboundednessTable {
  std::vector<UnboundednessRow> rows;
  double x_integral = 0; // integral of phiA^2(u) / ((u - 1/4)^2 + 1)
  double slope = 0;      // least-squares slope of value against n
};
// ||L_1 Psi_n||^2 = (2n+1)/2 * x_integral: the x-integral is n-independent
// after the shift u = x + 2n + 1, so the values are exactly proportional to
// 2n+1. y_half_extent is the half-width of the hosting y-domain and gates
// the largest representable mode.
UnboundednessTable unboundedness_demo(const std::vector<int>& n_list,
                                      double y_half_extent);

struct RegularityReport {
  std::vector<double> eps; // descending
  std::vector<double> norms;
  double limit_estimate = 0; // extrapolation of ||F_eps psi|| to eps = 0
  double rate = 0;           // growth of log norm vs log(1/eps), small eps
  bool diverging = false;
};
// ||F_eps psi|| across eps_list with F_eps = <D_x>/(1 + eps <D_x>). States
// with <D_x> psi in L^2 give a convergent sequence whose extrapolation
// matches ||<D_x> psi||; heavy Fourier tails grow like the tail integral
// predicts until 1/eps passes the grid band, so pick eps_list inside the
// resolvable window when probing synthetic tails.
RegularityReport dx_regularity_check(const StateField& psi,
                                     const std::vector<double>& eps_list);

} // namespace xf
