#include "xf/weights.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>

#include "xf/errors.hpp"

namespace xf {

namespace {

// Degree-7 polynomial in powers of (x - x0) matching value and first three
// derivatives of both branches. Low coefficients come straight from the left
// data; the top four solve a 4x4 system for the right data.
void hermite_bridge(double x0, double x1, const double f0[4],
                    const double f1[4], double c[8]) {
  c[0] = f0[0];
  c[1] = f0[1];
  c[2] = f0[2] / 2.0;
  c[3] = f0[3] / 6.0;
  const double t = x1 - x0;
  Eigen::Matrix4d M;
  Eigen::Vector4d r;
  for (int m = 0; m < 4; ++m) {
    double low = 0;
    for (int k = m; k < 4; ++k) {
      double fac = 1;
      for (int q = 0; q < m; ++q) fac *= (k - q);
      low += c[k] * fac * std::pow(t, k - m);
    }
    r[m] = f1[m] - low;
    for (int k = 4; k < 8; ++k) {
      double fac = 1;
      for (int q = 0; q < m; ++q) fac *= (k - q);
      M(m, k - 4) = fac * std::pow(t, k - m);
    }
  }
  Eigen::Vector4d hi = M.fullPivLu().solve(r);
  for (int k = 0; k < 4; ++k) c[4 + k] = hi[k];
}

double poly_eval(const double c[8], double u, int order) {
  double acc = 0;
  for (int k = 7; k >= order; --k) {
    double fac = 1;
    for (int q = 0; q < order; ++q) fac *= (k - q);
    acc = acc * u + c[k] * fac;
  }
  return acc;
}

// Degree-5 analogue matching value and first two derivatives at both ends.
void hermite_bridge5(double x0, double x1, const double f0[3],
                     const double f1[3], double c[6]) {
  c[0] = f0[0];
  c[1] = f0[1];
  c[2] = f0[2] / 2.0;
  const double t = x1 - x0;
  Eigen::Matrix3d M;
  Eigen::Vector3d r;
  for (int m = 0; m < 3; ++m) {
    double low = 0;
    for (int k = m; k < 3; ++k) {
      double fac = 1;
      for (int q = 0; q < m; ++q) fac *= (k - q);
      low += c[k] * fac * std::pow(t, k - m);
    }
    r[m] = f1[m] - low;
    for (int k = 3; k < 6; ++k) {
      double fac = 1;
      for (int q = 0; q < m; ++q) fac *= (k - q);
      M(m, k - 3) = fac * std::pow(t, k - m);
    }
  }
  Eigen::Vector3d hi = M.fullPivLu().solve(r);
  for (int k = 0; k < 3; ++k) c[3 + k] = hi[k];
}

double poly_eval5(const double c[6], double u, int order) {
  double acc = 0;
  for (int k = 5; k >= order; --k) {
    double fac = 1;
    for (int q = 0; q < order; ++q) fac *= (k - q);
    acc = acc * u + c[k] * fac;
  }
  return acc;
}

// 64-point Gauss-Legendre rule on [-1, 1], nodes by Newton on the recurrence.
struct GaussRule {
  double x[64], w[64];
};

const GaussRule& gauss64() {
  static const GaussRule rule = [] {
    GaussRule r;
    const int n = 64;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double pp = 0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = 0;
        for (int k = 0; k < n; ++k) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
        }
        pp = n * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-15) break;
      }
      r.x[i] = -z;
      r.x[n - 1 - i] = z;
      r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return r;
  }();
  return rule;
}

// Branch derivatives of -1/x, orders 0..3.
void inv_branch(double x, double out[4]) {
  out[0] = -1.0 / x;
  out[1] = 1.0 / (x * x);
  out[2] = -2.0 / (x * x * x);
  out[3] = 6.0 / (x * x * x * x);
}

// Branch derivatives of arctan(x - a + pi/4), orders 0..3.
void atan_branch(double x, double a, double out[4]) {
  const double u = x - a + M_PI / 4.0;
  const double d = 1.0 + u * u;
  out[0] = std::atan(u);
  out[1] = 1.0 / d;
  out[2] = -2.0 * u / (d * d);
  out[3] = (6.0 * u * u - 2.0) / (d * d * d);
}

} // namespace

WeightPair::WeightPair(double a) : a_(a) {
  if (!(a > 1.0)) throw InvalidParameter("weight transition point requires a > 1");

  double f0[4], f1[4];
  inv_branch(-a, f0);
  f1[0] = a; f1[1] = 2.0; f1[2] = 0.0; f1[3] = 0.0; // 2x branch at x = a/2
  hermite_bridge(-a, a / 2.0, f0, f1, rho_c_);

  atan_branch(a, a, f1);
  phi_base_ = f0[0];
  // log-slope data: L = log phi', L' = phi''/phi', L'' = phi'''/phi' - L'^2
  double l0[3], l1[3];
  for (const auto& [f, l] : {std::pair{f0, l0}, std::pair{f1, l1}}) {
    l[0] = std::log(f[1]);
    l[1] = f[2] / f[1];
    l[2] = f[3] / f[1] - l[1] * l[1];
  }
  hermite_bridge5(-a, a, l0, l1, phi_h_);

  // Tune the (x^2-a^2)^3 coefficient so the bridge climbs by exactly
  // phi(a) - phi(-a). That term is negative inside and vanishes to third
  // order at the junctions, so the increment is strictly decreasing in t.
  const double target = f1[0] - f0[0];
  auto increment = [&](double t) {
    phi_t_ = t;
    const GaussRule& gr = gauss64();
    double s = 0;
    for (int k = 0; k < 64; ++k) {
      const double x = a * gr.x[k];
      s += gr.w[k] * std::exp(log_slope(x, 0));
    }
    return s * a;
  };
  double lo = 0, hi = 0;
  if (increment(0) < target) {
    // need more mass: decrease t
    lo = -1;
    int guard = 0;
    while (increment(lo) < target && ++guard < 200) lo *= 2;
    if (guard >= 200)
      throw NonMonotoneBridge("phi bridge increment cannot be matched");
  } else {
    hi = 1;
    int guard = 0;
    while (increment(hi) > target && ++guard < 200) hi *= 2;
    if (guard >= 200)
      throw NonMonotoneBridge("phi bridge increment cannot be matched");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16 * (1 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (increment(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  phi_t_ = 0.5 * (lo + hi);

  const int samples = 10000;
  for (int i = 0; i <= samples; ++i) {
    const double x = -a + (2.0 * a) * i / samples;
    if (phi(x, 1) <= 0.0)
      throw NonMonotoneBridge("phi bridge loses monotonicity near x = " +
                              std::to_string(x));
    if (rho(x, 0) <= 0.0)
      throw NonMonotoneBridge("rho bridge loses positivity near x = " +
                              std::to_string(x));
  }
}

double WeightPair::rho(double x, int order) const {
  if (order < 0 || order > 3) throw InvalidParameter("derivative order must be 0..3");
  if (x <= -a_) {
    double f[4];
    inv_branch(x, f);
    return f[order];
  }
  if (2.0 * x > a_) {
    if (order == 0) return 2.0 * x;
    return order == 1 ? 2.0 : 0.0;
  }
  return poly_eval(rho_c_, x + a_, order);
}

double WeightPair::log_slope(double x, int order) const {
  const double d = x * x - a_ * a_;
  switch (order) {
    case 0:
      return poly_eval5(phi_h_, x + a_, 0) + phi_t_ * d * d * d;
    case 1:
      return poly_eval5(phi_h_, x + a_, 1) + phi_t_ * 6.0 * x * d * d;
    default:
      return poly_eval5(phi_h_, x + a_, 2) +
             phi_t_ * (6.0 * d * d + 24.0 * x * x * d);
  }
}

double WeightPair::bridge_phi(double x, int order) const {
  if (order == 0) {
    // integrate e^L over (-a, x); nodes mapped from [-1, 1]
    const GaussRule& gr = gauss64();
    const double center = 0.5 * (x - a_), half = 0.5 * (x + a_);
    double s = 0;
    for (int k = 0; k < 64; ++k)
      s += gr.w[k] * std::exp(log_slope(center + half * gr.x[k], 0));
    return phi_base_ + s * half;
  }
  const double e = std::exp(log_slope(x, 0));
  if (order == 1) return e;
  const double l1 = log_slope(x, 1);
  if (order == 2) return l1 * e;
  return (log_slope(x, 2) + l1 * l1) * e;
}

double WeightPair::phi(double x, int order) const {
  if (order < 0 || order > 3) throw InvalidParameter("derivative order must be 0..3");
  if (x <= -a_) {
    double f[4];
    inv_branch(x, f);
    return f[order];
  }
  if (x >= a_) {
    double f[4];
    atan_branch(x, a_, f);
    return f[order];
  }
  return bridge_phi(x, order);
}

namespace {
const WeightPair& cached_pair(double a) {
  static std::mutex mu;
  static std::map<double, WeightPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(a);
  if (it == cache.end()) it = cache.emplace(a, WeightPair(a)).first;
  return it->second;
}
} // namespace

double weight_eval(WeightFn which, double x, double a) {
  const WeightPair& w = cached_pair(a);
  switch (which) {
    case WeightFn::rho: return w.rho(x, 0);
    case WeightFn::phi: return w.phi(x, 0);
    case WeightFn::phi_d1: return w.phi(x, 1);
    case WeightFn::phi_d2: return w.phi(x, 2);
    case WeightFn::phi_d3: return w.phi(x, 3);
  }
  throw InvalidParameter("unknown weight selector");
}

double cutoff_F(double t, double c) {
  if (!(c > 0)) throw InvalidParameter("cutoff scale must be positive");
  const double r = std::abs(t);
  if (r <= c) return 1.0;
  if (r >= 2.0 * c) return 0.0;
  const double u = r / c - 1.0; // in (0,1)
  const auto B = [](double v) { return v > 0 ? std::exp(-1.0 / v) : 0.0; };
  const double s = B(u) / (B(u) + B(1.0 - u));
  return 1.0 - s;
}

WeightSpec make_weight_spec(double a, double delta, double gamma) {
  if (!(a > 1.0)) throw InvalidParameter("weight transition point requires a > 1");
  if (!(delta > 0.0 && delta <= 2.0))
    throw ValidationError("delta", "must be in (0, 2]");
  if (!(gamma > 0.0 && gamma < 0.5))
    throw ValidationError("gamma", "must be in (0, 0.5)");
  cached_pair(a); // construct and check the bridges now
  WeightSpec spec;
  spec.a = a;
  spec.delta = delta;
  spec.gamma = gamma;
  return spec;
}

} // namespace xf
