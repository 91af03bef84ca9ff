#pragma once

#include <cstdint>
#include <vector>

namespace xf {

struct FitResult {
  double slope = 0;
  double intercept = 0;
  double ci_lo = 0; // 95% bootstrap interval for the slope
  double ci_hi = 0;
};

// Ordinary least squares of y against x with a seeded residual bootstrap
// (200 resamples) for the slope interval.
FitResult ols_fit(const std::vector<double>& x, const std::vector<double>& y,
                  std::uint32_t seed = 42);

// Same, after taking logs of both coordinates; inputs must be positive.
FitResult ols_loglog(const std::vector<double>& x,
                     const std::vector<double>& y, std::uint32_t seed = 42);

} // namespace xf
