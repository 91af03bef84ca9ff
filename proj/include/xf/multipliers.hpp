#pragma once

#include "xf/field.hpp"

namespace xf {

// Diagonal Fourier symbols on the periodic backend. Parameterized kinds are
// built through the factories below so the parameter travels with the symbol.
struct MultiplierSymbol {
  enum class Kind {
    jdx_pow,          // <xi>^s
    jdy_pow,          // <eta>^g
    abs_dy_pow,       // |eta|^g
    inv_abs_dx_plus_i, // (1+xi^2)^{-1/2}
    shift,            // e^{i lambda xi}
    F_eps,            // <xi>/(1+eps<xi>)
    chi_t             // odd smooth clamp: identity to t, 2t beyond 2t
  };
  Kind kind;
  double param = 0;
};

MultiplierSymbol jdx_pow(double s);
MultiplierSymbol jdy_pow(double gamma);
MultiplierSymbol abs_dy_pow(double gamma);
MultiplierSymbol inv_abs_dx_plus_i();
MultiplierSymbol shift(double lambda);
MultiplierSymbol F_eps(double eps);
MultiplierSymbol chi_t(double t);

StateField fourier_multiplier(const MultiplierSymbol& sym, const StateField& f);

// Scalar clamp used by chi_t: x on [0,t], 2t beyond 2t, odd, quintic bridge.
double chi_clamp(double x, double t);

} // namespace xf
