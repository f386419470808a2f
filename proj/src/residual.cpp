#include "mhd/residual.hpp"

#include <cmath>
#include <complex>

#include "mhd/fft.hpp"

namespace mhd::residual {
namespace {

using solver::advect;

double spectral_l2(const Grid& g, const VectorSpectrum& s) {
  double acc = 0.0;
  for (int c = 0; c < 2; ++c)
    for (int r = 0; r < g.N; ++r)
      for (int k = 0; k < g.nc(); ++k) {
        const double w = (k == 0 || k == g.N / 2) ? 1.0 : 2.0;
        acc += w * std::norm(s[c](r, k));
      }
  return std::sqrt(acc * g.area());
}

VectorSpectrum band_projected(const solver::Spectral& sp, const VectorField& v) {
  VectorSpectrum s = fields::forward(v);
  sp.truncate(s);
  sp.project(s);
  return s;
}

double band_norm(const solver::Spectral& sp, const VectorField& v) {
  return spectral_l2(sp.grid(), band_projected(sp, v));
}

void add_to(VectorField& a, const VectorField& b) {
  a[0] += b[0];
  a[1] += b[1];
}

}  // namespace

AssembledState assemble(const solver::Spectral& sp, const std::vector<solver::LevelSpec>& specs,
                        const solver::BranchSolution& sol, std::size_t count, double t) {
  const Grid& g = sp.grid();
  AssembledState s;
  s.t = t;
  s.u = s.B = s.dtu = s.dtB = s.lapu = s.lapB = g.zero_vector();
  s.gu = {g.zeros(), g.zeros(), g.zeros(), g.zeros()};
  s.gB = s.gu;
  for (std::size_t k = 0; k < count; ++k) {
    if (specs[k].explicit_velocity) {
      const solver::ExplicitData ex = specs[k].explicit_velocity(t);
      add_to(s.u, ex.V);
      add_to(s.dtu, ex.dtV);
      add_to(s.lapu, ex.lapV);
      for (int c = 0; c < 4; ++c) s.gu[c] += ex.gradV[c];
    }
    const solver::Snapshot& snap = sol.levels.at(k).at(t);
    if (snap.dw_dt[0].size() == 0) throw std::invalid_argument("residual: snapshot has no time derivative");
    add_to(s.u, fields::inverse(snap.w));
    add_to(s.dtu, fields::inverse(snap.dw_dt));
    add_to(s.lapu, fields::inverse(sp.laplacian(snap.w)));
    const Gradient gw = sp.gradient(snap.w);
    add_to(s.B, fields::inverse(snap.d));
    add_to(s.dtB, fields::inverse(snap.dd_dt));
    add_to(s.lapB, fields::inverse(sp.laplacian(snap.d)));
    const Gradient gd = sp.gradient(snap.d);
    for (int c = 0; c < 4; ++c) {
      s.gu[c] += gw[c];
      s.gB[c] += gd[c];
    }
  }
  return s;
}

MhdResidual mhd_residual(const solver::Spectral& sp, const AssembledState& s, const VectorField* f_u,
                         const VectorField* f_b) {
  const Grid& g = sp.grid();
  MhdResidual r;
  r.t = s.t;
  const VectorField uu = advect(s.gu, s.u), bb = advect(s.gB, s.B);
  const VectorField ub = advect(s.gB, s.u), bu = advect(s.gu, s.B);

  VectorField Ru = {s.dtu[0] - s.lapu[0] + uu[0] - bb[0], s.dtu[1] - s.lapu[1] + uu[1] - bb[1]};
  VectorField Rb = {s.dtB[0] - s.lapB[0] + ub[0] - bu[0], s.dtB[1] - s.lapB[1] + ub[1] - bu[1]};
  if (f_u) {
    Ru[0] -= (*f_u)[0];
    Ru[1] -= (*f_u)[1];
  }
  if (f_b) {
    Rb[0] -= (*f_b)[0];
    Rb[1] -= (*f_b)[1];
  }
  r.scale_u = band_norm(sp, s.dtu) + band_norm(sp, s.lapu) + band_norm(sp, uu) + band_norm(sp, bb) +
              (f_u ? band_norm(sp, *f_u) : 0.0);
  r.scale_b = band_norm(sp, s.dtB) + band_norm(sp, s.lapB) + band_norm(sp, ub) + band_norm(sp, bu) +
              (f_b ? band_norm(sp, *f_b) : 0.0);

  r.velocity = spectral_l2(g, band_projected(sp, Ru));
  r.magnetic = spectral_l2(g, band_projected(sp, Rb));
  VectorSpectrum raw = fields::forward(Ru);
  sp.project(raw);
  VectorSpectrum bt = fields::forward(Rb);
  sp.truncate(bt);
  auto rel = [](double a, double s) { return s > 0.0 ? a / s : a; };
  r.velocity_rel = rel(r.velocity, r.scale_u);
  r.magnetic_rel = rel(r.magnetic, r.scale_b);
  r.velocity_raw_rel = rel(spectral_l2(g, raw), r.scale_u);
  r.magnetic_unprojected_rel = rel(spectral_l2(g, bt), r.scale_b);
  return r;
}

std::pair<VectorField, VectorField> manufactured_fields(const Grid& g, const ManufacturedCase& mc, double t) {
  const double k = mc.wavenumber;
  const double e = std::exp(-mc.rate * t);
  Field u1(g.N, g.N), u2(g.N, g.N), b1(g.N, g.N), b2(g.N, g.N);
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) {
      const double x1 = g.x(j), x2 = g.x(i);
      // psi_1 = sin(k x1 + 0.3) cos(k x2 + 1.1) + 0.5 cos(2 k x1 - 0.4)
      const double p1_1 = k * std::cos(k * x1 + 0.3) * std::cos(k * x2 + 1.1) - k * std::sin(2 * k * x1 - 0.4);
      const double p1_2 = -k * std::sin(k * x1 + 0.3) * std::sin(k * x2 + 1.1);
      // psi_2 = cos(k x1 - 0.5) sin(2 k x2 + 0.2)
      const double p2_1 = -k * std::sin(k * x1 - 0.5) * std::sin(2 * k * x2 + 0.2);
      const double p2_2 = 2 * k * std::cos(k * x1 - 0.5) * std::cos(2 * k * x2 + 0.2);
      u1(i, j) = mc.amplitude * e * p1_2;
      u2(i, j) = -mc.amplitude * e * p1_1;
      b1(i, j) = mc.magnetic_amplitude * e * p2_2;
      b2(i, j) = -mc.magnetic_amplitude * e * p2_1;
    }
  return {{u1, u2}, {b1, b2}};
}

namespace {

// Forcing that makes the manufactured fields an exact solution of the truncated system.
std::pair<VectorField, VectorField> manufactured_forcing(const solver::Spectral& sp, const ManufacturedCase& mc,
                                                         double t) {
  const Grid& g = sp.grid();
  const auto [u, b] = manufactured_fields(g, mc, t);
  const VectorSpectrum us = fields::forward(u), bs = fields::forward(b);
  const Gradient gu = sp.gradient(us), gb = sp.gradient(bs);
  const VectorField lu = fields::inverse(sp.laplacian(us)), lb = fields::inverse(sp.laplacian(bs));
  const VectorField uu = advect(gu, u), bb = advect(gb, b), ub = advect(gb, u), bu = advect(gu, b);
  VectorSpectrum nu = fields::forward(VectorField{uu[0] - bb[0], uu[1] - bb[1]});
  VectorSpectrum nb = fields::forward(VectorField{ub[0] - bu[0], ub[1] - bu[1]});
  for (auto* s : {&nu, &nb}) {
    sp.truncate(*s);
    sp.project(*s);
  }
  const VectorField pu = fields::inverse(nu), pb = fields::inverse(nb);
  VectorField fu, fb;
  for (int c = 0; c < 2; ++c) {
    fu[c] = -mc.rate * u[c] - lu[c] + pu[c];
    fb[c] = -mc.rate * b[c] - lb[c] + pb[c];
  }
  return {fu, fb};
}

}  // namespace

FloorResult manufactured_floor(const Grid& g, const solver::SolverConfig& cfg, const solver::RunPlan& plan,
                               const ManufacturedCase& mc) {
  const solver::Spectral sp(g);
  solver::LevelSpec spec;
  spec.level = 0;
  const auto [u0, b0] = manufactured_fields(g, mc, 0.0);
  spec.w0 = u0;
  spec.d0 = b0;
  spec.rates = {mc.rate};
  spec.extra_forcing = [&sp, mc](double t) { return manufactured_forcing(sp, mc, t); };
  const solver::BranchSolution sol = solver::solve_branch(g, {spec}, cfg, plan);

  FloorResult out;
  out.steps = sol.steps;
  for (double t : plan.check_times) {
    const AssembledState s = assemble(sp, {spec}, sol, 1, t);
    const auto [fu, fb] = manufactured_forcing(sp, mc, t);
    const MhdResidual r = mhd_residual(sp, s, &fu, &fb);
    out.max_residual_rel = std::max({out.max_residual_rel, r.velocity_rel, r.magnetic_rel});
    const auto [ue, be] = manufactured_fields(g, mc, t);
    const VectorField du = {s.u[0] - ue[0], s.u[1] - ue[1]};
    out.max_error_rel = std::max(out.max_error_rel, fields::l2_norm(g, du) / fields::l2_norm(g, ue));
  }
  return out;
}

}  // namespace mhd::residual
