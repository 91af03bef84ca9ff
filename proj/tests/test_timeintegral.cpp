#include <doctest.h>

#include <cmath>

#include "xf/errors.hpp"
#include "xf/field.hpp"
#include "xf/grid.hpp"
#include "xf/hamiltonian.hpp"
#include "xf/resolvent.hpp"
#include "xf/timeintegral.hpp"

using namespace xf;

TEST_CASE("singular-time windows have the right geometry") {
  TimeWindows w = make_time_windows(0.5, 100);
  CHECK(w.half_width() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(w.in_window(0.05));
  CHECK(w.in_window(3.05));
  CHECK(w.in_window(2 * M_PI + 0.09));
  CHECK(!w.in_window(2.9));
  CHECK(!w.in_window(1.5));
  CHECK(make_time_windows(0.25, 1.0).half_width() == 1.0);
}

TEST_CASE("the partition tiles the horizon with alternating segments") {
  TimeWindows w = make_time_windows(0.5, 100);
  const double T = 7.0;
  auto segs = w.partition(T);
  REQUIRE(!segs.empty());
  CHECK(segs.front().t0 == 0.0);
  CHECK(segs.back().t1 == doctest::Approx(T).epsilon(1e-14));
  double covered = 0;
  for (size_t i = 0; i < segs.size(); ++i) {
    CHECK(segs[i].t1 > segs[i].t0);
    covered += segs[i].t1 - segs[i].t0;
    if (i) {
      CHECK(segs[i].t0 == doctest::Approx(segs[i - 1].t1).epsilon(1e-14));
      CHECK(segs[i].windowed != segs[i - 1].windowed);
    }
    // windowed pieces sit inside n pi +- 0.1, the rest outside
    const double mid = (segs[i].t0 + segs[i].t1) / 2;
    CHECK(w.in_window(mid) == segs[i].windowed);
  }
  CHECK(covered == doctest::Approx(T).epsilon(1e-12));
  CHECK(segs.front().windowed); // t = 0 is singular
  int windowed = 0;
  for (auto& s : segs) windowed += s.windowed;
  CHECK(windowed == 3); // 0, pi, 2pi fall inside [0, 7]

  auto tiny = w.partition(0.05);
  REQUIRE(tiny.size() == 1);
  CHECK(tiny[0].windowed);
  CHECK(tiny[0].t1 == doctest::Approx(0.05));
}

TEST_CASE("window and integral parameter guards") {
  CHECK_THROWS_AS(make_time_windows(0.6, 100), InvalidParameter);
  CHECK_THROWS_AS(make_time_windows(0.25, 0.5), InvalidParameter);

  Grid2D g = build_square_grid(6, 32, Backend::periodic_spectral);
  StateField f = gaussian_state(g, 0, 0, 1.2);
  CHECK_THROWS_AS(resolvent_time_integral(0.5, 0.5, 0.25, f, 20.0),
                  InvalidParameter);
  CHECK_THROWS_AS(resolvent_time_integral(5.0, 0.0, 0.25, f, 20.0),
                  InvalidParameter);
  CHECK_THROWS_AS(resolvent_time_integral(5.0, 1.5, 0.25, f, 20.0),
                  InvalidParameter);

  TimeIntegralOptions opt;
  opt.budget = 10.0; // ln(1e8)/0.5 = 36.8 exceeds this
  CHECK_THROWS_AS(resolvent_time_integral(5.0, 0.5, 0.25, f, 20.0, opt),
                  TailTooLong);
}

TEST_CASE("the time integral agrees with the direct resolvent solve") {
  // A packet whose kinetic momentum sits exactly at the drift value moves in
  // a straight line, so it stays inside the box for the whole horizon the
  // tail target asks for.
  Grid2D g = build_square_grid(6, 32, Backend::periodic_spectral);
  StateField f = gaussian_state(g, 0, -2.5, 1.1, 2.5, 0.5);
  const double lambda = 5.0, nu = 1.0;

  HamiltonianSpec op = make_hamiltonian(g);
  ResolventQuery q;
  q.lambda = lambda;
  q.nu = nu;
  q.sign = +1;
  StateField direct = solve_resolvent(op, q, f);

  TimeIntegralOptions opt;
  opt.tail = 4.1e-3;
  opt.kernel.quad_tol = 1e-2;
  StateField viaT = resolvent_time_integral(lambda, nu, 0.25, f, 0.0, opt);
  CHECK(rel_l2_error(viaT, direct) < 1.5e-2);
}
