#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "xf/field.hpp"
#include "xf/hamiltonian.hpp"

namespace xf {

// Sandwich weight: an optional pointwise grid factor times an optional
// x-Fourier symbol (1+(xi+beta)^2)^{-1/2}. Both factors are real and
// self-adjoint.
struct WeightDescriptor {
  Eigen::ArrayXXd pointwise;
  bool has_pointwise = false;
  bool has_symbol = false;
  double symbol_beta = 0;
  double sup = 1.0;
  std::string label = "identity";
};

WeightDescriptor weight_identity();
// <r>^{-delta}, r^2 = x^2 + y^2
WeightDescriptor weight_r_pow(const Grid2D& g, double delta);
// <x>^{-s}
WeightDescriptor weight_x_pow(const Grid2D& g, double s);
// |y-beta|^{-gamma} F_{eta0}(y-beta) <x>^{-s} with s = 1/2 + gamma/2; the
// singular factor is capped at (h_y/2)^{-gamma}.
WeightDescriptor weight_strip(const Grid2D& g, double gamma, double eta0,
                              double beta);
// |D_x + beta + i|^{-1}
WeightDescriptor weight_inv_dx(double beta);

void apply_weight(const WeightDescriptor& w, StateField& f);

struct ResolventQuery {
  double lambda = 0;
  double nu = 1;
  int sign = +1; // resolvent (H - lambda - sign * i nu)^{-1}
  WeightDescriptor weight_left;
  WeightDescriptor weight_right;
  double solver_tol = 1e-8;
};

// (H - lambda - sign i nu)^{-1} rhs. fd backend: sparse direct factorization
// up to 256^2 unknowns, preconditioned iterations above; periodic backend:
// dense factorization, small grids only. Factorizations are kept in a
// two-slot cache (disable with XFIELDS_CACHE=0).
StateField solve_resolvent(const HamiltonianSpec& op, const ResolventQuery& q,
                           const StateField& rhs);

// Solve with the adjoint of the same shifted operator, reusing the cached
// factorization of q.
StateField solve_resolvent_adjoint(const HamiltonianSpec& op,
                                   const ResolventQuery& q,
                                   const StateField& rhs);

struct NormEstimate {
  double value = 0;
  int iterations = 0;
  double residual = 0; // final relative change of the estimate
  bool budget_exceeded = false;
};

// Largest singular value of W_L (H-lambda -+ i nu)^{-1} W_R by power
// iteration on the composed map and its adjoint. Deterministic for a fixed
// seed; at the iteration cap it returns the current estimate with the budget
// flag set.
NormEstimate weighted_norm(const HamiltonianSpec& op, const ResolventQuery& q,
                           std::uint32_t seed = 42, int max_iter = 200,
                           double tol = 1e-3);

// Generic largest-singular-value estimator for a linear map given by its
// forward and adjoint actions on fields over g.
using FieldMap = std::function<StateField(const StateField&)>;
NormEstimate power_method_norm(const Grid2D& g, const FieldMap& fwd,
                               const FieldMap& adj, std::uint32_t seed = 42,
                               int max_iter = 200, double tol = 1e-3);

void clear_factorization_cache();

} // namespace xf
