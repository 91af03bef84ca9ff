#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "xf/field.hpp"
#include "xf/hamiltonian.hpp"
#include "xf/resolvent.hpp"
#include "xf/weights.hpp"

namespace xf {

// i (D_x (H f) - H (D_x f)) compared against (1 + V_x) f.
struct CommutatorReport {
  double residual_abs = 0;
  double residual_rel = 0;
  double reference_norm = 0;
};
CommutatorReport commutator_dx(const HamiltonianSpec& spec,
                               const StateField& f);

// Residual refinement order for the commutator identity between n_coarse^2
// and (2 n_coarse)^2 periodic grids on [-box_half, box_half]^2, Gaussian data
// against V.
double commutator_refinement_order(const PotentialSpec& V, double box_half,
                                   int n_coarse);

// The quadratic-form identity for W = phi'(x) phi'(y):
//   (W f, H f) = ||sqrt(W) (D_x+y) f||^2 + ||sqrt(W) D_y f||^2
//              + i (W_x f, (D_x+y) f) + i (W_y f, D_y f) + (W f, (x+V) f).
// The displayed cross summands -Im(...) are the real parts of the complex
// cross pairings; the imaginary parts are the flux terms that cancel only on
// eigenfunctions, so the full complex identity is the one that converges
// under refinement.
struct GammaReport {
  double quad_dx = 0;
  double quad_dy = 0;
  Cplx cross_x;
  Cplx cross_y;
  double cross_x_display = 0; // -Im (phi''/phi' sqrt(W) (D_x+y) f, sqrt(W) f)
  double cross_y_display = 0;
  double field_pair = 0;
  Cplx gamma_value;
  Cplx pairing_value;
  double residual = 0;
};
GammaReport gamma_form(const StateField& f, const HamiltonianSpec& spec,
                       const WeightSpec& ws);

// max over the sampled line of |phi''/phi'| and |phi'''/phi'|^{1/2}.
double ca_aggregate(const std::function<double(double, int)>& phi,
                    double x_lo, double x_hi, int n_samples);
double estimate_Ca(const WeightSpec& ws);

struct EigenfreeBounds {
  double r1 = 0;
  double r2 = 0;
  double r = 0;
  double c_a = 0;
  double a0 = 0;
  double a1 = 0;
};
// R1 = C_a + A0, R2 = (C_a A1)^8, R = max. Pure in (c_a, a0, a1).
EigenfreeBounds eigenfree_bounds(double c_a, double a0, double a1);
// Convenience: C_a from the weights, A0 from the spec, A1 as the grid
// supremum of <x><y>|V_x|.
EigenfreeBounds eigenfree_bounds(const PotentialSpec& V, const WeightSpec& ws,
                                 const Grid2D& g);

struct Eigenpair {
  double lambda = 0;
  StateField psi;
  double residual = 0;
  int iterations = 0;
};
// Inverse iteration with Rayleigh-quotient restarts at the given shift.
Eigenpair shift_invert_eigenpair(const HamiltonianSpec& spec, double shift,
                                 int max_iter = 90, double tol = 1e-10,
                                 std::uint32_t seed = 1);

struct DetectorFlag {
  double lambda = 0;      // flagged scan point
  double exponent = 0;    // fitted growth of the weighted norm in 1/nu
  double lambda_peak = 0; // refined location of the nu_min norm peak
  bool confirmed = false;
  double lambda_eigen = 0; // shift-invert eigenvalue near the peak
};
struct DetectorReport {
  std::vector<double> lambdas;
  std::vector<double> exponents;
  std::vector<double> norms_min_nu; // weighted norm at the smallest nu
  std::vector<double> residuals;    // power-method residual of that estimate
  std::vector<DetectorFlag> flags;
  double flag_threshold = 0.8;
};
// Flags lambda values where the weighted resolvent norm grows like
// (1/nu)^e with e >= 0.8 as nu decreases through nu_sweep.
DetectorReport limiting_absorption_detector(
    const HamiltonianSpec& spec, const std::vector<double>& lambda_window,
    const std::vector<double>& nu_sweep, const WeightDescriptor& w,
    bool confirm_flags = true, std::uint32_t seed = 42);

struct DerivativeNormReport {
  std::vector<double> lambdas;
  std::vector<double> norm_dx;   // ||phi^{1/2}(x) (D_x+y) (H-lambda-i)^{-1}||
  std::vector<double> norm_dy;   // ||phi^{1/2}(x) D_y (H-lambda-i)^{-1}||
  std::vector<double> norm_frac; // ||<x>^{-g/2} <D_y>^g (H-lambda-i)^{-1}||
  double exp_dx = 0; // fitted growth vs <lambda>
  double exp_dy = 0;
  double exp_frac = 0;
  double gamma = 0;
};
DerivativeNormReport derivative_resolvent_norms(
    const HamiltonianSpec& spec, const std::vector<double>& lambda_grid,
    double gamma, const WeightSpec& ws, std::uint32_t seed = 42);

struct EnergyCheck {
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
};
// lhs = integral of rho(x) (|(D_x+y)f|^2 + |D_y f|^2), rhs = ||Hf||^2+||f||^2.
// rho_scale multiplies the weight (the left side is linear in rho).
EnergyCheck energy_inequality_check(const StateField& f,
                                    const HamiltonianSpec& spec,
                                    const WeightSpec& ws,
                                    double rho_scale = 1.0);
double energy_family_constant(const HamiltonianSpec& spec,
                              const WeightSpec& ws, int n_states,
                              std::uint32_t seed = 42);

struct Prop29Report {
  double norm_base = 0;
  double norm_half_eta = 0;
  double norm_beta_shift = 0;
  double ratio_half_eta = 0;
  double ratio_beta_shift = 0;
  int cheb_degree = 0;
  double range_lo = 0;
  double range_hi = 0;
  double cheb_error = 0;
  double sobolev_family_c = 0;
  double sobolev_psi0_ratio = 0;
  double gamma = 0;
  double eta0 = 0;
  double beta = 0;
};
// || |y-beta|^{-g} F_{eta0}(y-beta) <x>^{-g/2} <H>^{-g} || with <H>^{-g}
// realized by a Chebyshev polynomial of H on its numerical range; stability
// checks at eta0/2 and beta+0.7, plus the 1-d fractional Sobolev constant.
Prop29Report prop29_norm(const HamiltonianSpec& spec, double gamma,
                         double eta0, double beta, std::uint32_t seed = 42);

struct EigenfunctionReport {
  double lambda = 0;
  double residual = 0;
  double n_dx = 0; // ||sqrt(phi'(x)) (D_x+y) psi||
  double n_dy = 0; // ||sqrt(phi(x)) sqrt(phi'(y)) D_y psi||
  double n_r = 0;  // ||<r>^{-1/2}(D_x+y)psi|| + ||<r>^{-1/2}D_y psi||
  double ratio_dx = 0; // n_dx / <lambda>^{1/4}
  double ratio_dy = 0; // n_dy / <lambda>^{3/8}
};
EigenfunctionReport eigenfunction_diagnostics(const StateField& psi,
                                              double lambda,
                                              const HamiltonianSpec& spec,
                                              const WeightSpec& ws);

} // namespace xf
