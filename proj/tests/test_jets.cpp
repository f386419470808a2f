#include <cmath>

#include "doctest.h"
#include "mhd/jets.hpp"
#include "mhd/quadrature.hpp"
#include "mhd/smooth.hpp"

using namespace mhd;

TEST_CASE("Taylor series of exp, sqrt and the reciprocal match closed forms") {
  constexpr int K = 6;
  const double x0 = 0.7;
  const auto x = Taylor1<double, K>::variable(x0);
  const auto e = exp(x);
  const auto r = reciprocal(x);
  const auto s = sqrt(x);
  for (int m = 0; m <= K; ++m) {
    // d^m/dx^m e^x / m! = e^x0 / m!
    CHECK(e.c[m] == doctest::Approx(std::exp(x0) / factorial(m)).epsilon(1e-14));
    // 1/x = sum (-1)^m (x - x0)^m / x0^{m+1}
    CHECK(r.c[m] == doctest::Approx(std::pow(-1.0, m) / std::pow(x0, m + 1)).epsilon(1e-13));
  }
  // sqrt(x0 + h) = sqrt(x0) (1 + h / x0)^{1/2}: coefficient binom(1/2, m) x0^{1/2 - m}
  double binom = 1.0;
  for (int m = 0; m <= K; ++m) {
    CHECK(s.c[m] == doctest::Approx(binom * std::pow(x0, 0.5 - m)).epsilon(1e-13));
    binom *= (0.5 - m) / (m + 1);
  }
}

TEST_CASE("two-variable jets obey the product rule and compose with linear maps") {
  constexpr int K = 4;
  // f(x1, x2) = sin(2 x1 + 3 x2) around (0.3, -0.2)
  const double th = 2.0 * 0.3 + 3.0 * -0.2;
  Taylor1<double, K> cs, sn;
  cos_sin_series<double, K>(th, cs, sn);
  const auto f = jet_from_linear(sn, 2.0, 3.0);
  CHECK(f.value() == doctest::Approx(std::sin(th)));
  CHECK(f.d(1, 0) == doctest::Approx(2.0 * std::cos(th)));
  CHECK(f.d(0, 1) == doctest::Approx(3.0 * std::cos(th)));
  CHECK(f.d(2, 1) == doctest::Approx(-12.0 * std::cos(th)));
  CHECK(f.laplacian().value() == doctest::Approx(-13.0 * std::sin(th)));
  const auto g = f * f;  // sin^2, derivative 2 sin cos * 2 = 2 sin(2 th)
  CHECK(g.d(1, 0) == doctest::Approx(2.0 * std::sin(2.0 * th)));
}

TEST_CASE("the smooth step is C-infinity, monotone and its series matches finite differences") {
  CHECK(smooth_step(-1.0) == 0.0);
  CHECK(smooth_step(2.0) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  double prev = 0.0;
  for (int i = 1; i < 100; ++i) {
    const double v = smooth_step(i / 100.0);
    CHECK(v >= prev);
    CHECK(smooth_step(1.0 - i / 100.0) == doctest::Approx(1.0 - v).epsilon(1e-12));
    prev = v;
  }
  const double t0 = 0.37, h = 1e-4;
  const auto s = smooth_step_series<3>(t0);
  CHECK(s.c[1] == doctest::Approx((smooth_step(t0 + h) - smooth_step(t0 - h)) / (2 * h)).epsilon(1e-7));
  CHECK(2.0 * s.c[2] ==
        doctest::Approx((smooth_step(t0 + h) - 2 * smooth_step(t0) + smooth_step(t0 - h)) / (h * h)).epsilon(1e-5));
  CHECK(plateau(0.2, 0.5, 1.0) == 1.0);
  CHECK(plateau(-1.2, 0.5, 1.0) == 0.0);
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n - 1 exactly") {
  const GaussLegendre gl(8);
  double wsum = 0.0;
  for (double w : gl.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(gl.integrate([](double x) { return std::pow(x, 14); }, 0.0, 1.0) == doctest::Approx(1.0 / 15.0).epsilon(1e-14));
  CHECK(gl.integrate([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}
