#include <cmath>

#include "doctest.h"
#include "mhd/fields.hpp"
#include "mhd/norms.hpp"

using namespace mhd;

TEST_CASE("the dyadic partition sums to one away from the origin") {
  for (double xi : {1.0, 1.5, 3.0, 10.0, 100.0, 300.0}) {
    double s = norms::low_pass(xi);
    for (int j = 1; j <= 10; ++j) s += norms::block_symbol(j, xi);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(norms::low_pass(0.5) == 1.0);
  CHECK(norms::low_pass(2.5) == 0.0);
}

TEST_CASE("blocks plus the mean reconstruct a field") {
  const Grid g(64);
  const Field f = fields::sample(g, [](double x1, double x2) { return 1.5 + std::exp(std::sin(x1) * std::cos(2 * x2)); });
  double mean = 0.0;
  const auto blocks = norms::lp_blocks(g, f, &mean);
  Field s = Field::Constant(g.N, g.N, mean);
  for (const auto& b : blocks) s += b.band;
  CHECK((s - f).abs().maxCoeff() < 1e-13);
}

TEST_CASE("Besov norms of a single Fourier mode follow the block symbols") {
  // cos(k x1) lies in the blocks j with block_symbol(j, k) > 0, with band
  // block_symbol(j, k) cos(k x1), so its B^s_{inf,q} norm is
  // (sum_j (2^{js} psi_j(k))^q)^{1/q}.
  const Grid g(128);
  const int k = 12;
  const Field f = fields::sample(g, [&](double x1, double) { return std::cos(k * x1); });
  for (double s : {-1.0, 0.0, 2.0}) {
    double sum1 = 0.0, sup = 0.0;
    for (int j = 0; j <= 8; ++j) {
      const double w = std::pow(2.0, j * s) * norms::block_symbol(j, k);
      sum1 += w;
      sup = std::max(sup, w);
    }
    norms::BesovSpec one{s, norms::kInf, 1.0};
    norms::BesovSpec inf{s, norms::kInf, norms::kInf};
    CHECK(norms::besov_norm(g, f, one) == doctest::Approx(sum1).epsilon(1e-12));
    CHECK(norms::besov_norm(g, f, inf) == doctest::Approx(sup).epsilon(1e-12));
  }
}

TEST_CASE("Lebesgue norms match closed-form integrals") {
  const Grid g(64);
  const Field f = fields::sample(g, [](double x1, double x2) { return std::cos(x1) * std::cos(x2); });
  // int cos^2 x1 cos^2 x2 = pi^2
  CHECK(norms::lebesgue(g, f, 2.0) == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(norms::lebesgue(g, f, norms::kInf) == doctest::Approx(1.0));
  // int cos^4 x1 cos^4 x2 = (3 pi / 4)^2
  CHECK(norms::lebesgue(g, f, 4.0) == doctest::Approx(std::pow(9.0 * kPi * kPi / 16.0, 0.25)).epsilon(1e-13));
}

TEST_CASE("time norms integrate with the trapezoid rule") {
  const std::vector<double> t = {0.0, 1.0, 2.0};
  CHECK(norms::time_norm(t, {1.0, 1.0, 1.0}, 1.0) == doctest::Approx(2.0));
  CHECK(norms::time_norm(t, {3.0, 3.0, 3.0}, 2.0) == doctest::Approx(3.0 * std::sqrt(2.0)));
  CHECK(norms::time_norm(t, {1.0, 5.0, 2.0}, norms::kInf) == 5.0);
}

TEST_CASE("invalid Besov specifications are rejected") {
  const Grid g(32);
  norms::BesovSpec bad{0.0, 0.5, 1.0};
  CHECK_THROWS(norms::validate(g, bad));
}
