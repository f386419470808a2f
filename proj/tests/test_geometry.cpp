#include <random>

#include "doctest.h"
#include "mhd/geometry.hpp"

using namespace mhd;
using namespace mhd::geometry;

TEST_CASE("default4 directions are unit, rational and closed under negation") {
  const DirectionSet set = DirectionSet::preset("default4");
  REQUIRE(set.size() == 8);
  CHECK(set.n_lambda() == 5);
  for (std::size_t i = 0; i < set.size(); i += 2) {
    const Direction& k = set.directions()[i];
    CHECK(k.p * k.p + k.q * k.q == k.d * k.d);
    CHECK(set.directions()[i + 1] == k.negated());
    CHECK(k.perp().dot(k.vec()) == 0.0);
  }
}

TEST_CASE("non-unit triples are rejected by name") {
  CHECK_THROWS_WITH_AS(DirectionSet::from_triples({{1, 1, 1}}), doctest::Contains("1"), std::invalid_argument);
}

TEST_CASE("the identity decomposes into the baseline coefficients") {
  const DirectionSet set = DirectionSet::preset("default4");
  const auto d = decompose_symmetric(set, Eigen::Matrix2d::Identity(), 0.25);
  // Oracle: sum_k a_k^2 k_perp (x) k_perp over the 8 directions.
  Eigen::Matrix2d S = Eigen::Matrix2d::Zero();
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Eigen::Vector2d kp = set.directions()[i].perp();
    S += d.coefficient[i] * kp * kp.transpose();
    CHECK(d.coefficient[i] > 0.0);
  }
  CHECK((S - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("random matrices in the sigma ball reconstruct with positive weights") {
  const DirectionSet set = DirectionSet::preset("default4");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s < 200; ++s) {
    Eigen::Matrix2d E;
    E << u(rng), 0.0, 0.0, u(rng);
    E(0, 1) = E(1, 0) = u(rng);
    E *= 0.9e-3 / E.norm();
    const Eigen::Matrix2d R = Eigen::Matrix2d::Identity() + E;
    const auto d = decompose_symmetric(set, R, 0.25);
    CHECK((reconstruct(set, d) - R).cwiseAbs().maxCoeff() < 1e-14);
    for (double c : d.coefficient) CHECK(c > 0.0);
  }
  Eigen::Matrix2d far = Eigen::Matrix2d::Identity();
  far(0, 0) += 0.1;
  CHECK_THROWS(decompose_symmetric(set, far, 0.25));
}

TEST_CASE("Mikado products split into oscillatory and mean parts and are pressure balanced") {
  const DirectionSet set = DirectionSet::preset("default4");
  const Grid g(64);
  const std::vector<double> b = {1.0, 1.0, 0.5, 0.5, 0.8, 0.8, 1.2, 1.2};
  CHECK(verify_mikado_identity(set, b, g) < 1e-12);
  CHECK(verify_stationary_pressure(set, b, g) < 1e-12);
  // The stationary flow is divergence free: W = sum b_k i k_perp e^{i k.xi}.
  const StationaryFlow f = stationary_flow(set, b, g);
  double mx = 0.0;
  for (int i = 0; i < 2; ++i) mx = std::max(mx, f.W[i].abs().maxCoeff());
  CHECK(mx > 0.1);
}
