#include <doctest.h>

#include <cmath>

#include "xf/errors.hpp"
#include "xf/weights.hpp"

using namespace xf;

TEST_CASE("closed forms outside the bridge, a = 2") {
  WeightPair w(2.0);
  // rho = -1/x on the left tail, 2x beyond the right junction
  CHECK(w.rho(-4.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w.rho(3.0) == doctest::Approx(6.0).epsilon(1e-15));
  // phi = arctan(x - a + pi/4) on the right, -1/x on the left
  CHECK(w.phi(2.0) == doctest::Approx(0.6657737500283538).epsilon(1e-15));
  CHECK(w.phi(-5.0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(w.phi(-2.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("bridges keep phi increasing and rho positive") {
  WeightPair w(2.0);
  for (int k = 0; k <= 400; ++k) {
    const double x = -6.0 + 12.0 * k / 400.0;
    CHECK(w.phi(x, 1) > 0);
    CHECK(w.rho(x) > 0);
  }
}

TEST_CASE("bridge joins match value and three derivatives") {
  WeightPair w(2.0);
  const double eps = 1e-7;
  // phi bridges (-a, a); rho bridges (-a, a/2]
  for (double x0 : {-2.0, 2.0})
    for (int k = 0; k <= 3; ++k) {
      const double below = w.phi(x0 - eps, k);
      const double above = w.phi(x0 + eps, k);
      CHECK(below == doctest::Approx(above).epsilon(1e-4));
    }
  for (double x0 : {-2.0, 1.0})
    for (int k = 0; k <= 3; ++k) {
      const double below = w.rho(x0 - eps, k);
      const double above = w.rho(x0 + eps, k);
      CHECK(below == doctest::Approx(above).epsilon(1e-4));
    }
}

TEST_CASE("derivative ratios on the left tail") {
  // |phi''/phi'| = 2/|x| and |phi'''/phi'| = 6/x^2 where phi = -1/x
  WeightPair w(2.0);
  CHECK(std::abs(w.phi(-4.0, 2) / w.phi(-4.0, 1)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(w.phi(-4.0, 3) / w.phi(-4.0, 1)) ==
        doctest::Approx(6.0 / 16.0).epsilon(1e-12));
}

TEST_CASE("weight_eval matches the pair and rejects bad selectors") {
  WeightPair w(3.0);
  CHECK(weight_eval(WeightFn::rho, -4.0, 3.0) == doctest::Approx(w.rho(-4.0)));
  CHECK(weight_eval(WeightFn::phi_d2, 4.0, 3.0) ==
        doctest::Approx(w.phi(4.0, 2)));
  CHECK_THROWS_AS(WeightPair(0.5), InvalidParameter);
}

TEST_CASE("cutoff is 1 inside, 0 outside, smooth between") {
  CHECK(cutoff_F(0.5, 1.0) == doctest::Approx(1.0));
  CHECK(cutoff_F(-1.0, 1.0) == doctest::Approx(1.0));
  CHECK(cutoff_F(2.0, 1.0) == doctest::Approx(0.0));
  CHECK(cutoff_F(-3.0, 1.0) == doctest::Approx(0.0));
  const double mid = cutoff_F(1.5, 1.0);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  CHECK_THROWS_AS(cutoff_F(1.0, 0.0), InvalidParameter);
}

TEST_CASE("weight spec validation") {
  WeightSpec s = make_weight_spec(2.0, 1.0, 0.4);
  CHECK(s.s_weight() == doctest::Approx(0.7));
  CHECK_THROWS_AS(make_weight_spec(1.0, 1.0, 0.4), InvalidParameter);
  CHECK_THROWS_AS(make_weight_spec(2.0, 3.0, 0.4), ValidationError);
  CHECK_THROWS_AS(make_weight_spec(2.0, 1.0, 0.6), ValidationError);
}
