#include <cmath>

#include "doctest.h"
#include "mhd/config.hpp"
#include "mhd/error_terms.hpp"
#include "mhd/fields.hpp"
#include "mhd/iteration.hpp"

using namespace mhd;

namespace {
const iteration::Construction& construction() {
  static const config::RunConfig rc = config::from_json(config::smoke_document());
  static const iteration::Construction c(rc.grid, rc.schedule, 2);
  return c;
}
}  // namespace

TEST_CASE("advection of a linear field by a constant field") {
  const Grid g(16);
  // X = (a x1 + b x2, c x1 + d x2) has constant gradient; (Y . grad) X = (a y1 + b y2, c y1 + d y2).
  const flow::Gradient gX = {Field::Constant(16, 16, 1.0), Field::Constant(16, 16, 2.0),
                             Field::Constant(16, 16, 3.0), Field::Constant(16, 16, 4.0)};
  const VectorField Y = {Field::Constant(16, 16, 0.5), Field::Constant(16, 16, -1.0)};
  const VectorField a = errors::advect(gX, Y);
  CHECK(a[0](3, 4) == doctest::Approx(0.5 - 2.0));
  CHECK(a[1](3, 4) == doctest::Approx(1.5 - 4.0));
  CHECK(errors::divergence_of(gX)(0, 0) == doctest::Approx(5.0));
}

TEST_CASE("the error decomposition is exact and every term is needed") {
  const auto& c = construction();
  const double l2 = c.schedule().lambda(2);
  const std::vector<errors::Ablation> abl = {errors::Ablation::None, errors::Ablation::DropE1, errors::Ablation::DropE2,
                                             errors::Ablation::DropE3, errors::Ablation::DropPressure};
  const auto rows = errors::verify_decomposition(c.context(2), {0.0, 1.0 / (l2 * l2), 2.0 / (l2 * l2)}, abl);
  REQUIRE(rows.size() == 15);
  for (std::size_t i = 0; i < rows.size(); i += abl.size()) {
    CHECK(rows[i].tag == "full");
    CHECK(rows[i].residual <= 1e-8);
    for (std::size_t a = 1; a < abl.size(); ++a) CHECK(rows[i + a].residual >= 1e5 * rows[i].residual);
  }
}

TEST_CASE("the sample's left side equals div(w (x) w) + d_t w^(i) computed independently") {
  const auto& c = construction();
  const double l2 = c.schedule().lambda(2), t = 0.5 / (l2 * l2);
  const errors::ErrorSample s = errors::compute_errors(c.context(2), t);
  const flow::HeatFlow& h = *c.level(2).wh;
  const VectorField w = h.w(t);
  const flow::Gradient gw = h.grad_w(t);
  // div(w (x) w) = (w . grad) w for divergence-free w.
  VectorField lhs = errors::advect(gw, w);
  const VectorField dwi = c.level(2).wi.dt_w(t);
  lhs = {lhs[0] + dwi[0], lhs[1] + dwi[1]};
  const double scale = fields::max_abs(lhs);
  CHECK(fields::max_abs(VectorField{lhs[0] - s.lhs[0], lhs[1] - s.lhs[1]}) <= 1e-12 * scale);
  CHECK(fields::max_abs(errors::divergence_of(gw)) <= 1e-10 * fields::max_abs(gw[0]));
}
