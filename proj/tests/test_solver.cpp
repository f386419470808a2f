#include <cmath>

#include "doctest.h"
#include "mhd/fields.hpp"
#include "mhd/mhd_solver.hpp"
#include "mhd/residual.hpp"

using namespace mhd;

namespace {

double rel(const VectorSpectrum& a, const VectorSpectrum& b) {
  const VectorField x = fields::inverse(a), y = fields::inverse(b);
  return fields::max_abs(VectorField{x[0] - y[0], x[1] - y[1]}) / std::max(fields::max_abs(y), 1e-300);
}

solver::RunPlan plan_at(double t) {
  solver::RunPlan p;
  p.check_times = {t};
  p.t_end = t;
  return p;
}

double fitted_order(const Grid& g, solver::SolverConfig cfg, const residual::ManufacturedCase& mc,
                    const std::vector<double>& dts, double T) {
  std::vector<double> lx, ly;
  for (double dt : dts) {
    cfg.dt_fixed = dt;
    cfg.window_fraction = 0.0;
    lx.push_back(std::log(dt));
    ly.push_back(std::log(residual::manufactured_floor(g, cfg, plan_at(T), mc).max_error_rel));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i] / lx.size(), my += ly[i] / ly.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
  return sxy / sxx;
}

}  // namespace

TEST_CASE("zero data with no explicit velocity stays exactly zero") {
  const Grid g(32);
  solver::LevelSpec spec;
  spec.w0 = spec.d0 = g.zero_vector();
  const auto sol = solver::solve_branch(g, {spec}, {}, plan_at(0.05));
  const auto& s = sol.levels[0].at(0.05);
  CHECK(s.w[0].abs().maxCoeff() == 0.0);
  CHECK(s.d[1].abs().maxCoeff() == 0.0);
}

TEST_CASE("a radial magnetic seed decays by the heat semigroup") {
  const Grid g(64);
  solver::LevelSpec spec;
  spec.d0 = solver::magnetic_seed(g, 0.4, 1e-3);
  const auto sol = solver::solve_branch(g, {spec}, {}, plan_at(0.05));
  const solver::Spectral sp(g);
  VectorSpectrum ex = fields::forward(spec.d0);
  sp.truncate(ex);
  sp.project(ex);
  sp.heat_inplace(ex, 0.05);
  CHECK(rel(sol.levels[0].at(0.05).d, ex) <= 1e-8);
  CHECK(fields::max_norm(spec.d0) == doctest::Approx(1e-3));
}

TEST_CASE("both third-order integrators converge at third order on a manufactured solution") {
  const Grid g(64);
  residual::ManufacturedCase mc;
  mc.rate = 20.0;
  mc.wavenumber = 3;
  solver::SolverConfig cfg;
  CHECK(fitted_order(g, cfg, mc, {2e-3, 1e-3, 5e-4}, 0.04) == doctest::Approx(3.0).epsilon(0.1));
  cfg.integrator = solver::Integrator::IfRk3;
  CHECK(fitted_order(g, cfg, mc, {2e-3, 1e-3, 5e-4}, 0.04) == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("Elsasser variables reproduce the primitive-variable run") {
  const Grid g(64);
  solver::LevelSpec spec;
  const Field psi1 = fields::sample(g, [](double x1, double x2) { return std::sin(2 * x1) * std::cos(x2); });
  const Field psi2 = fields::sample(g, [](double x1, double x2) { return 0.5 * std::cos(x1 + 3 * x2); });
  spec.w0 = fields::perp_gradient(g, psi1);
  spec.d0 = fields::perp_gradient(g, psi2);
  solver::SolverConfig a, b;
  a.dt_fixed = b.dt_fixed = 1e-3;
  b.elsasser = true;
  const auto sa = solver::solve_branch(g, {spec}, a, plan_at(0.05));
  const auto sb = solver::solve_branch(g, {spec}, b, plan_at(0.05));
  CHECK(rel(sb.levels[0].at(0.05).w, sa.levels[0].at(0.05).w) <= 1e-12);
  CHECK(rel(sb.levels[0].at(0.05).d, sa.levels[0].at(0.05).d) <= 1e-12);
  // The run is nonlinear: the state differs from pure heat decay.
  const solver::Spectral sp(g);
  VectorSpectrum heat = fields::forward(spec.w0);
  sp.truncate(heat);
  sp.heat_inplace(heat, 0.05);
  CHECK(rel(sa.levels[0].at(0.05).w, heat) > 1e-4);
}

TEST_CASE("the snapshot time derivative matches the manufactured rate") {
  const Grid g(32);
  residual::ManufacturedCase mc;
  mc.rate = 5.0;
  const auto [w0, d0] = residual::manufactured_fields(g, mc, 0.0);
  const auto [w1, d1] = residual::manufactured_fields(g, mc, 0.1);
  CHECK(fields::max_abs(VectorField{w1[0] - std::exp(-0.5) * w0[0], w1[1] - std::exp(-0.5) * w0[1]}) <=
        1e-14 * fields::max_abs(w0));
  CHECK(fields::max_abs(fields::divergence(g, w0)) < 1e-12);
  CHECK(fields::max_abs(fields::divergence(g, d0)) < 1e-12);
}
