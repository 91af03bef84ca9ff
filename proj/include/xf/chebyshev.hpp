#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <utility>

#include "xf/field.hpp"
#include "xf/hamiltonian.hpp"

namespace xf {

// Chebyshev expansion of a real function on [lo, hi]. coeffs[k] multiplies
// T_k of the affinely mapped argument; the k = 0 term enters at half weight.
struct ChebyshevApprox {
  double lo = -1;
  double hi = 1;
  Eigen::VectorXd coeffs;
  double max_error = 0;
};

// Fit by interpolation at Chebyshev-Gauss nodes, doubling the degree until
// the dense-sample sup error reaches tol. Throws ApproximationDegreeExceeded
// past max_degree.
ChebyshevApprox chebyshev_fit(const std::function<double(double)>& f,
                              double lo, double hi, double tol,
                              int max_degree = 8000);

double chebyshev_eval(const ChebyshevApprox& ap, double t);

// Spectrum extremes of H on its grid via shifted power iteration, padded by a
// safety margin on both ends.
std::pair<double, double> spectral_range(const HamiltonianSpec& spec,
                                         int iters = 60,
                                         std::uint32_t seed = 7);

// ap(H) f by the Clenshaw recurrence in the operator argument. The expansion
// interval must contain the spectrum of the discretized H or the recurrence
// diverges.
StateField apply_function_of_h(const HamiltonianSpec& spec,
                               const ChebyshevApprox& ap,
                               const StateField& f);

} // namespace xf
