#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "mhd/fields.hpp"

using namespace mhd;

namespace {
double max_diff(const Field& a, const Field& b) { return (a - b).abs().maxCoeff(); }
}  // namespace

TEST_CASE("grid sample positions and transform round trip") {
  const Grid g(32);
  CHECK(g.x(0) == doctest::Approx(-kPi));
  CHECK(g.nc() == 17);
  const Field f = fields::sample(g, [](double x1, double x2) { return std::sin(x1) + 0.5 * std::cos(3 * x2); });
  CHECK(max_diff(inverse(forward(f)), f) < 1e-15);
  CHECK_THROWS_AS(Grid(48), std::invalid_argument);
}

TEST_CASE("spectral derivatives of trigonometric polynomials are exact") {
  const Grid g(64);
  const Field f = fields::sample(g, [](double x1, double x2) { return std::sin(3 * x1) * std::cos(2 * x2); });
  const Field d1 = fields::sample(g, [](double x1, double x2) { return 3 * std::cos(3 * x1) * std::cos(2 * x2); });
  const Field d2 = fields::sample(g, [](double x1, double x2) { return -2 * std::sin(3 * x1) * std::sin(2 * x2); });
  CHECK(max_diff(fields::d1(g, f), d1) < 1e-13);
  CHECK(max_diff(fields::d2(g, f), d2) < 1e-13);
  CHECK(max_diff(fields::laplacian(g, f), -13.0 * f) < 1e-12);
  CHECK(max_diff(fields::inverse_laplacian(g, f), f / -13.0) < 1e-15);
  // curl grad = 0, div grad_perp = 0
  CHECK(fields::max_abs(fields::curl(g, fields::gradient(g, f))) < 1e-12);
  CHECK(fields::max_abs(fields::divergence(g, fields::perp_gradient(g, f))) < 1e-12);
  const Field c = f + 1.0;
  CHECK_THROWS_AS(fields::inverse_laplacian(g, c), std::domain_error);
}

TEST_CASE("the Leray projector removes gradients and keeps divergence-free fields") {
  const Grid g(64);
  const Field phi = fields::sample(g, [](double x1, double x2) { return std::cos(x1 + 2 * x2); });
  const Field psi = fields::sample(g, [](double x1, double x2) { return std::sin(3 * x1 - x2); });
  const VectorField grad = fields::gradient(g, phi), rot = fields::perp_gradient(g, psi);
  const VectorField v = {grad[0] + rot[0], grad[1] + rot[1]};
  const VectorField p = fields::leray_project(g, v);
  CHECK(max_diff(p[0], rot[0]) < 1e-13);
  CHECK(max_diff(p[1], rot[1]) < 1e-13);
}

TEST_CASE("the tensor potential inverts the divergence on divergence-free fields") {
  const Grid g(64);
  const Field psi = fields::sample(g, [](double x1, double x2) {
    return std::sin(2 * x1) * std::cos(x2) + 0.3 * std::cos(5 * x1 + 3 * x2);
  });
  const VectorField w = fields::perp_gradient(g, psi);
  const SymTensorField T = fields::tensor_potential(g, w);
  const VectorField d = fields::divergence(g, T);
  CHECK(max_diff(d[0], w[0]) < 1e-13);
  CHECK(max_diff(d[1], w[1]) < 1e-13);
  // Not divergence free: rejected.
  const VectorField bad = fields::gradient(g, psi);
  CHECK_THROWS(fields::tensor_potential(g, bad));
}

TEST_CASE("mollifiers have unit mass and enforce the resolution rule") {
  const Grid g(128);
  const fields::MollifierPair m = fields::make_mollifiers(g, 0.2, 0.01);
  CHECK(m.space_mass(g) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.exponential_weight(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  // kappa(mu) is a weighted average of e^{-mu s}, s in (0, eps): inside (e^{-mu eps}, 1).
  const double k = m.exponential_weight(50.0);
  CHECK(k < 1.0);
  CHECK(k > std::exp(-50.0 * 0.01));
  CHECK_THROWS(fields::make_mollifiers(g, g.h, 0.01));
  // A constant is reproduced.
  const Field one = Field::Constant(g.N, g.N, 2.0);
  CHECK(max_diff(fields::mollify_space(g, one, m), one) < 1e-12);
}

TEST_CASE("field files round trip bit-exactly with their sidecar") {
  const Grid g(32);
  const Field a = fields::sample(g, [](double x1, double x2) { return std::sin(x1) * std::exp(std::cos(x2)); });
  const Field b = 2.0 * a;
  const std::string stem = (std::filesystem::temp_directory_path() / "mhd_field_roundtrip").string();
  fields::write_field(stem, g, {&a, &b}, {"x1", "x2"}, 0.5, "test field");
  Grid back;
  const auto comp = fields::read_field(stem, &back);
  REQUIRE(comp.size() == 2);
  CHECK(back.N == 32);
  CHECK((comp[0] == a).all());
  CHECK((comp[1] == b).all());
}
