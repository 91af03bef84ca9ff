#include "xf/timeintegral.hpp"

#include <cmath>

#include "xf/errors.hpp"
#include "xf/timestep.hpp"

namespace xf {

TimeWindows make_time_windows(double theta, double lambda) {
  if (!(theta > 0 && theta <= 0.5))
    throw InvalidParameter("window exponent must lie in (0, 1/2]");
  if (!(lambda >= 1)) throw InvalidParameter("window scale requires lambda >= 1");
  return TimeWindows{theta, lambda};
}

bool TimeWindows::in_window(double t) const {
  const double w = half_width();
  const double r = std::abs(t - M_PI * std::round(t / M_PI));
  return r <= w;
}

std::vector<TimeWindows::Segment> TimeWindows::partition(double T) const {
  const double w = half_width();
  std::vector<Segment> out;
  double t = 0;
  int n = 0;
  while (t < T) {
    const double win_end = std::min(T, n * M_PI + w);
    if (win_end > t) out.push_back({t, win_end, true});
    t = win_end;
    if (t >= T) break;
    const double next_win = (n + 1) * M_PI - w;
    const double str_end = std::min(T, next_win);
    if (str_end > t) out.push_back({t, str_end, false});
    t = str_end;
    ++n;
  }
  return out;
}

namespace {
const double kGlNode[5] = {0.1488743389816312, 0.4333953941292472,
                           0.6794095682990244, 0.8650633666889845,
                           0.9739065285171717};
const double kGlWeight[5] = {0.2955242247147529, 0.2692667193099963,
                             0.2190863625159820, 0.1494513491505806,
                             0.0666713443086881};
} // namespace

StateField resolvent_time_integral(double lambda, double nu, double theta,
                                   const StateField& f, double T_max,
                                   const TimeIntegralOptions& opt) {
  if (!(lambda >= 1)) throw InvalidParameter("spectral parameter requires lambda >= 1");
  if (!(nu > 0 && nu <= 1)) throw InvalidParameter("absorption must lie in (0, 1]");
  const double required = std::log(1.0 / opt.tail) / nu;
  const double T = std::max(T_max, required);
  if (T > opt.budget)
    throw TailTooLong("tail e^{-nu t} needs T = " + std::to_string(T) +
                      " which exceeds the budget " + std::to_string(opt.budget));

  const TimeWindows win = make_time_windows(theta, lambda);
  const Cplx ex(-nu, lambda); // integrand factor e^{(i lambda - nu) t}

  StateField acc(f.grid);
  const auto segments = win.partition(T);
  for (const auto& seg : segments) {
    if (seg.windowed) {
      // march across the window, Simpson on the uniform step grid
      int m = std::max(2, static_cast<int>(std::ceil((seg.t1 - seg.t0) / opt.tau)));
      if (m % 2) ++m;
      const double tau = (seg.t1 - seg.t0) / m;
      StateField u(f.grid);
      if (seg.t0 == 0) {
        u = f;
      } else {
        u = apply_kernel_with(seg.t0, f,
                              cycloid_kernel_coefficients(seg.t0,
                                                          opt.kernel.a_tol),
                              opt.kernel);
      }
      StrangMarcher marcher(f.grid, tau);
      for (int k = 0; k <= m; ++k) {
        const double t = seg.t0 + k * tau;
        double wq = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        wq *= tau / 3.0;
        acc.v += (wq * std::exp(ex * t)) * u.v;
        if (k < m) marcher.step(u.v);
      }
    } else {
      const int panels =
          std::max(1, static_cast<int>(std::ceil((seg.t1 - seg.t0) / opt.panel_max)));
      const double plen = (seg.t1 - seg.t0) / panels;
      for (int p = 0; p < panels; ++p) {
        const double mid = seg.t0 + (p + 0.5) * plen;
        for (int q = 0; q < 5; ++q) {
          for (int sgn = -1; sgn <= 1; sgn += 2) {
            const double t = mid + sgn * 0.5 * plen * kGlNode[q];
            StateField v = apply_kernel_with(
                t, f, cycloid_kernel_coefficients(t, opt.kernel.a_tol),
                opt.kernel);
            acc.v += (0.5 * plen * kGlWeight[q] * std::exp(ex * t)) * v.v;
          }
        }
      }
    }
  }
  acc.v *= Cplx(0, 1);
  return acc;
}

} // namespace xf
