#include "xf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "xf/errors.hpp"

namespace xf {

namespace {
void ols(const std::vector<double>& x, const std::vector<double>& y,
         double& slope, double& intercept) {
  const size_t n = x.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw InvalidParameter("degenerate abscissa for a fit");
  slope = sxy / sxx;
  intercept = my - slope * mx;
}
} // namespace

FitResult ols_fit(const std::vector<double>& x, const std::vector<double>& y,
                  std::uint32_t seed) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidParameter("fit needs matched samples, at least two");
  FitResult fit;
  ols(x, y, fit.slope, fit.intercept);

  const size_t n = x.size();
  std::vector<double> resid(n);
  for (size_t i = 0; i < n; ++i)
    resid[i] = y[i] - (fit.intercept + fit.slope * x[i]);

  const int B = 200;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  std::vector<double> slopes(B);
  std::vector<double> yb(n);
  for (int b = 0; b < B; ++b) {
    for (size_t i = 0; i < n; ++i)
      yb[i] = fit.intercept + fit.slope * x[i] + resid[pick(rng)];
    double s, c;
    ols(x, yb, s, c);
    slopes[b] = s;
  }
  std::sort(slopes.begin(), slopes.end());
  fit.ci_lo = slopes[static_cast<size_t>(0.025 * (B - 1))];
  fit.ci_hi = slopes[static_cast<size_t>(0.975 * (B - 1))];
  return fit;
}

FitResult ols_loglog(const std::vector<double>& x,
                     const std::vector<double>& y, std::uint32_t seed) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0))
      throw InvalidParameter("log-log fit needs positive samples");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return ols_fit(lx, ly, seed);
}

} // namespace xf
