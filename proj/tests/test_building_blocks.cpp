#include <cmath>

#include "doctest.h"
#include "mhd/amplitude.hpp"
#include "mhd/config.hpp"
#include "mhd/cutoffs.hpp"
#include "mhd/fields.hpp"
#include "mhd/heat_flow.hpp"
#include "mhd/iteration.hpp"
#include "mhd/schedule.hpp"

using namespace mhd;

namespace {

const iteration::Construction& smoke_construction() {
  static const config::RunConfig rc = config::from_json(config::smoke_document());
  static const iteration::Construction c(rc.grid, rc.schedule, 2);
  return c;
}

double rel(const VectorField& a, const VectorField& b) {
  const double s = std::max(fields::max_abs(b), 1e-300);
  return fields::max_abs(VectorField{a[0] - b[0], a[1] - b[1]}) / s;
}

nlohmann::json schedule_section(std::vector<long> lambda, std::vector<long> rho) {
  return {{"lambda", lambda}, {"rho", rho}, {"epsilon0", 1e-12}, {"p", 4}, {"c0", "auto"}};
}

}  // namespace

TEST_CASE("schedule validation names the violated constraint") {
  const Grid g(256);
  CHECK_NOTHROW(make_schedule(schedule_section({10, 30}, {5, 5}), g));
  CHECK_THROWS_WITH(make_schedule(schedule_section({12, 30}, {5, 5}), g),
                    doctest::Contains("not a multiple of N_Lambda = 5"));
  CHECK_THROWS_WITH(make_schedule(schedule_section({30, 10}, {5, 5}), g), doctest::Contains("strictly increasing"));
  CHECK_THROWS_WITH(make_schedule(schedule_section({10, 80}, {5, 5}), g), doctest::Contains("grid admission"));
}

TEST_CASE("schedule JSON keeps integers exact and reals as decimal strings") {
  const ParameterSchedule s = make_schedule(schedule_section({10, 30}, {5, 5}), Grid(256));
  const auto j = schedule_to_json(s);
  const std::string text = j.dump();
  CHECK(text.find("\"lambda\":10") != std::string::npos);
  CHECK(decimal(0.25) == "0.25");
  CHECK(std::stod(decimal(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("half binomial coefficients expand the square root") {
  double sum = 0.0;
  const double d = 0.01;
  for (int j = 0; j <= 6; ++j) sum += amplitude::half_binomial(j) * std::pow(d, j);
  CHECK(sum == doctest::Approx(std::sqrt(1.0 + d)).epsilon(1e-14));
  const amplitude::AmplitudeSet a = amplitude::constant_amplitude(Grid(32), 2, 0.5);
  CHECK(a.field(1, 3.0).maxCoeff() == doctest::Approx(0.5));
  CHECK(a.field(1, 3.0).minCoeff() == doctest::Approx(0.5));
}

TEST_CASE("cutoffs satisfy their pointwise invariants and nest") {
  const auto& cut = smoke_construction().cutoffs();
  for (int m = 1; m <= 2; ++m) {
    CHECK(cut.check_chi(m).ok);
    CHECK(cut.check_eta(m).ok);
  }
  const Field chi1 = cut.chi_field(1), chi2 = cut.chi_field(2);
  CHECK(cut.support_area(chi2) <= cut.support_area(chi1));
  CHECK(chi1.minCoeff() >= 0.0);
  CHECK(chi1.maxCoeff() <= 1.0);
}

TEST_CASE("the first heat flow is a decaying Fourier mode") {
  const auto& c = smoke_construction();
  const flow::HeatFlow& h = *c.level(1).wh;
  const double lam = c.schedule().lambda(1);
  for (double t : {1e-3, 1.0 / (lam * lam)}) {
    const VectorField w0 = h.w(0.0), wt = h.w(t);
    const double f = std::exp(-lam * lam * t);
    CHECK(rel(wt, VectorField{f * w0[0], f * w0[1]}) < 1e-14);
  }
}

TEST_CASE("heat flows split into principal and remainder and have a tensor potential") {
  const auto& c = smoke_construction();
  for (int n = 1; n <= 2; ++n) {
    const flow::HeatFlow& h = *c.level(n).wh;
    const double t = 0.5 / (c.schedule().lambda(n) * c.schedule().lambda(n));
    const VectorField m = h.principal(t), r = h.remainder(t), w = h.w(t);
    CHECK(rel(VectorField{m[0] + r[0], m[1] + r[1]}, w) < 1e-12);
    if (h.has_potential_gradient()) {
      // (div T)_a = d_b T_ab from the jet derivatives of the potential.
      const flow::TensorGradient gT = h.grad_potential(t);
      CHECK(rel(VectorField{gT[0] + gT[3], gT[2] + gT[5]}, w) < 1e-12);
    }
  }
}

TEST_CASE("the inverse-cascade flow carries the previous heat flow with the doubled rate") {
  const auto& c = smoke_construction();
  const auto& wi = c.level(2).wi;
  const flow::HeatFlow& prev = *c.level(1).wh;
  const VectorField a0 = wi.w(0.0), b0 = prev.w(0.0);
  CHECK((a0[0] == b0[0]).all());
  CHECK((a0[1] == b0[1]).all());
  const double l2 = c.schedule().lambda(2), t = 1.0 / (l2 * l2);
  const VectorField at = wi.w(t), bt = prev.w(t);
  const double f = std::exp(-2.0 * l2 * l2 * t);
  CHECK(rel(at, VectorField{f * bt[0], f * bt[1]}) < 1e-14);
  const VectorField alt = flow::inverse_cascade_from_decomposition(prev, c.cutoffs(), c.directions(),
                                                                   c.decomposition(), wi.lambda(), t);
  CHECK(rel(alt, at) < 1e-10);
}

TEST_CASE("the second heat flow lives inside the previous cutoff support") {
  const auto& c = smoke_construction();
  const VectorField w = c.level(2).wh->w(0.0);
  const Field chi = c.cutoffs().chi_field(1) * c.cutoffs().eta_field(1);
  for (Eigen::Index i = 0; i < chi.size(); ++i)
    if (chi.data()[i] == 0.0) {
      CHECK(w[0].data()[i] == 0.0);
      CHECK(w[1].data()[i] == 0.0);
    }
}
