#include "mhd/iteration.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mhd/amplitude.hpp"
#include "mhd/norms.hpp"

namespace mhd::iteration {
namespace {

void add_to(VectorField& a, const VectorField& b) {
  a[0] += b[0];
  a[1] += b[1];
}

VectorField diff(const VectorField& a, const VectorField& b) { return {a[0] - b[0], a[1] - b[1]}; }

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Trapezoid integral of values over strictly increasing times.
double trapezoid(const std::vector<double>& t, const std::vector<double>& v) {
  double acc = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) acc += 0.5 * (t[i] - t[i - 1]) * (v[i] + v[i - 1]);
  return acc;
}

double ratio_of(double measured, double bound) {
  if (bound > 0.0) return measured / bound;
  return measured == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

// Index of level n in a branch.
std::size_t branch_index(const BranchRun& b, int n) {
  const auto it = std::find(b.levels.begin(), b.levels.end(), n);
  if (it == b.levels.end())
    throw std::invalid_argument("iteration: level " + std::to_string(n) + " is not in the " + parity_name(b.parity) +
                                " branch");
  return std::size_t(it - b.levels.begin());
}

// (u_n, B_n) at a snapshot time, without derivatives.
std::pair<VectorField, VectorField> assembled_fields(const Construction& c, const BranchRun& b, int n, double t) {
  const Grid& g = c.grid();
  VectorField u = g.zero_vector(), B = g.zero_vector();
  const std::size_t top = branch_index(b, n);
  for (std::size_t k = 0; k <= top; ++k) {
    const LevelFlows& lf = c.level(b.levels[k]);
    add_to(u, lf.wh->w(t));
    if (!lf.wi.empty()) add_to(u, lf.wi.w(t));
    const solver::Snapshot& s = b.solution.levels[k].at(t);
    add_to(u, fields::inverse(s.w));
    add_to(B, fields::inverse(s.d));
  }
  return {u, B};
}

// Time samples 0 and lambda^{-2} 2^{k/2} up to the horizon.
std::vector<double> ladder(double lambda, double horizon) {
  std::vector<double> t{0.0};
  const double base = 1.0 / (lambda * lambda);
  for (int k = -16;; ++k) {
    const double s = base * std::pow(2.0, 0.5 * k);
    if (s >= horizon) break;
    t.push_back(s);
  }
  t.push_back(horizon);
  return t;
}

double lp(const Grid& g, const flow::Gradient& gv, double p) {
  const Field mag = (gv[0].square() + gv[1].square() + gv[2].square() + gv[3].square()).sqrt();
  return norms::lebesgue(g, mag, p);
}

std::string block_range(const Grid& g) { return "0.." + std::to_string(norms::representable_block(g)); }

}  // namespace

VectorField magnetic_seed(const Grid& g, const config::SeedConfig& seed) {
  return solver::magnetic_seed(g, seed.width, seed.amplitude);
}

double seed_scale(const ParameterSchedule& s, int n) {
  const int q = 2 * ((n + 1) / 2) - 1;
  return std::pow(s.lambda(q), -50.0);
}

std::string parity_name(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

std::vector<int> branch_levels(Parity p, int top) {
  std::vector<int> out;
  for (int n = (p == Parity::Odd ? 1 : 2); n <= top; n += 2) out.push_back(n);
  return out;
}

Construction::Construction(const Grid& grid, const ParameterSchedule& schedule, int levels)
    : grid_(grid), schedule_(schedule) {
  if (levels < 1 || levels > schedule.level_count())
    throw std::invalid_argument("iteration: level count " + std::to_string(levels) + " outside [1, " +
                                std::to_string(schedule.level_count()) + "]");
  set_ = geometry::DirectionSet::preset(schedule.direction_preset);
  dec_ = geometry::affine_decomposition(set_, schedule.baseline_c);
  cut_ = std::make_unique<cutoffs::CutoffFamily>(schedule_, set_, grid_);
  levels_.resize(std::size_t(levels));
  for (int n = 1; n <= levels; ++n) {
    LevelFlows& lf = levels_[std::size_t(n - 1)];
    lf.level = n;
    const auto& par = schedule_.levels[std::size_t(n - 1)];
    // The tensor gradient is only read by the error terms of the next level.
    const flow::BuildOptions opts{n < levels};
    if (n == 1) {
      const flow::LevelGeometry geo{1, par.lambda, par.rho, geometry::DirectionSet::from_triples({{1, 0, 1}}), false};
      lf.wh = std::make_unique<flow::HeatFlow>(
          flow::build_heat_flow(geo, *cut_, amplitude::constant_amplitude(grid_, 1, schedule_.eps0 / 2.0), opts));
      continue;
    }
    const flow::HeatFlow& prev = *levels_[std::size_t(n - 2)].wh;
    const std::vector<amplitude::RatedTensor> terms = prev.potential_terms();
    const double mf = amplitude::max_frobenius(terms, amplitude::ball_check_times(terms));
    double c0 = 0.0;
    if (schedule_.c0.automatic) {
      c0 = mf > 0.0 ? schedule_.c0.safety * mf / (1000.0 * schedule_.sigma) : 0.0;
    } else {
      c0 = schedule_.c0.value_for(n);
    }
    amplitude::AmplitudeSet amp;
    if (c0 > 0.0) {
      const double ell = schedule_.ell(n - 1);
      const fields::MollifierPair moll = fields::make_mollifiers(grid_, ell, ell);
      try {
        amp = amplitude::build_amplitudes(grid_, terms, dec_, c0, moll, schedule_.amplitude_order, schedule_.sigma);
      } catch (const std::domain_error& e) {
        throw std::domain_error("iteration: level " + std::to_string(n) + ": " + e.what());
      }
    } else {
      amp = amplitude::constant_amplitude(grid_, set_.pair_count(), 0.0);
    }
    lf.c0 = c0;
    lf.max_argument = amp.max_argument;
    const flow::LevelGeometry geo{n, par.lambda, par.rho, set_, true};
    lf.wh = std::make_unique<flow::HeatFlow>(flow::build_heat_flow(geo, *cut_, amp, opts));
    lf.wi = flow::InverseCascadeFlow(&prev, par.lambda);
  }
}

errors::LevelContext Construction::context(int n) const {
  if (n < 2 || n > level_count()) throw std::invalid_argument("iteration: no decomposition context at level " +
                                                              std::to_string(n));
  errors::LevelContext ctx;
  ctx.current = level(n).wh.get();
  ctx.previous = level(n - 1).wh.get();
  ctx.cut = cut_.get();
  ctx.dec = dec_;
  ctx.c0 = level(n).c0;
  return ctx;
}

solver::LevelSpec Construction::spec(int n, const VectorField& seed) const {
  const LevelFlows& lf = level(n);
  solver::LevelSpec sp;
  sp.level = n;
  const flow::HeatFlow* wh = lf.wh.get();
  const flow::InverseCascadeFlow wi = lf.wi;
  sp.explicit_velocity = [wh, wi](double t) {
    errors::ExplicitVelocity ev = errors::explicit_velocity(*wh, wi, t);
    return solver::ExplicitData{std::move(ev.V), std::move(ev.dtV), std::move(ev.lapV), std::move(ev.gradV)};
  };
  for (const auto& term : wh->terms()) sp.rates.push_back(double(term.rate));
  if (!wi.empty()) {
    const double extra = 2.0 * double(wi.lambda()) * double(wi.lambda());
    for (const auto& term : wi.previous()->terms()) sp.rates.push_back(double(term.rate) + extra);
  }
  const double scale = seed_scale(schedule_, n);
  sp.d0 = {seed[0] * scale, seed[1] * scale};
  return sp;
}

solver::RunPlan default_plan(const ParameterSchedule& s, int levels) {
  solver::RunPlan plan;
  for (int n = 1; n <= levels; ++n) plan.check_times.push_back(1.0 / (s.lambda(n) * s.lambda(n)));
  plan.check_times.push_back(2.0 / (s.lambda(1) * s.lambda(1)));
  std::sort(plan.check_times.begin(), plan.check_times.end());
  plan.t_end = std::max(s.t_end, plan.check_times.back());
  plan.series_p = s.p;
  return plan;
}

BranchRun solve_branch(const Construction& c, Parity parity, int top, const VectorField& seed,
                       const solver::SolverConfig& cfg, const solver::RunPlan& plan) {
  BranchRun b;
  b.parity = parity;
  b.levels = branch_levels(parity, top);
  if (b.levels.empty()) throw std::invalid_argument("iteration: the " + parity_name(parity) + " branch is empty");
  for (int n : b.levels) b.specs.push_back(c.spec(n, seed));
  try {
    b.solution = solver::solve_branch(c.grid(), b.specs, cfg, plan);
  } catch (const solver::SolverAbort& e) {
    throw solver::SolverAbort("iteration: " + parity_name(parity) + " branch (levels up to " +
                              std::to_string(b.levels.back()) + "): " + e.what());
  }
  return b;
}

residual::AssembledState assembled(const Construction& c, const BranchRun& b, int n, double t) {
  const solver::Spectral sp(c.grid());
  return residual::assemble(sp, b.specs, b.solution, branch_index(b, n) + 1, t);
}

residual::FloorResult manufactured_floor(const config::RunConfig& rc, const Grid& g, double lambda,
                                         const solver::RunPlan& plan) {
  residual::ManufacturedCase mc;
  mc.amplitude = rc.mms_amplitude;
  mc.magnetic_amplitude = 0.5 * rc.mms_amplitude;
  mc.rate = lambda * lambda;
  mc.wavenumber = rc.mms_wavenumber;
  // The manufactured fields decay like e^{-lambda^2 t} while the discretization
  // error decays at the slower rates of the resolved modes, so the floor uses
  // the check times up to 2 lambda^{-2}, where the relative error is meaningful.
  solver::RunPlan p = plan;
  p.check_times.clear();
  const double last = 2.0 / (lambda * lambda) * (1.0 + 1e-12);
  for (double t : plan.check_times)
    if (t <= last) p.check_times.push_back(t);
  if (p.check_times.empty()) throw std::invalid_argument("iteration: no check time within 2 lambda^{-2}");
  p.t_end = p.check_times.back();
  return residual::manufactured_floor(g, rc.solver, p, mc);
}

double snapshot_divergence(const Grid& g, const VectorSpectrum& s) {
  double num_max = 0.0, den_max = 0.0;
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.nc(); ++j) {
      const double k1 = g.ke1(j), k2 = g.ke2(i);
      const double kk = std::sqrt(k1 * k1 + k2 * k2);
      num_max = std::max(num_max, std::abs(k1 * s[0](i, j) + k2 * s[1](i, j)));
      den_max = std::max(den_max, kk * std::sqrt(std::norm(s[0](i, j)) + std::norm(s[1](i, j))));
    }
  return den_max > 0.0 ? num_max / den_max : 0.0;
}

LevelCheck check_level(const Construction& c, const BranchRun& b, int n, const solver::RunPlan& plan,
                       const residual::FloorResult& floor, double factor) {
  const solver::Spectral sp(c.grid());
  const std::size_t k = branch_index(b, n);
  LevelCheck out;
  out.level = n;
  out.floor = floor.max_error_rel;
  out.floor_residual = floor.max_residual_rel;
  for (double t : plan.check_times) {
    const residual::AssembledState s = residual::assemble(sp, b.specs, b.solution, k + 1, t);
    const residual::MhdResidual r = residual::mhd_residual(sp, s);
    out.max_residual = std::max({out.max_residual, r.velocity_rel, r.magnetic_rel});
    out.residuals.push_back(r);
  }
  for (const auto& snap : b.solution.levels[k].snapshots)
    out.max_divergence = std::max({out.max_divergence, snapshot_divergence(c.grid(), snap.w),
                                   snapshot_divergence(c.grid(), snap.d)});
  out.passed = std::isfinite(out.max_residual) && out.max_residual <= factor * out.floor;
  return out;
}

double besov_minus1(const Grid& g, const VectorField& v) {
  norms::BesovSpec spec;
  spec.s = -1.0;
  spec.p = norms::kInf;
  spec.q = 1.0;
  return norms::besov_norm(g, v, spec);
}

double besov_minus2(const Grid& g, const VectorField& v) {
  norms::BesovSpec spec;
  spec.s = -2.0;
  spec.p = norms::kInf;
  spec.q = 1.0;
  return norms::besov_norm(g, v, spec);
}

SeparationReport separation(const Construction& c, const BranchRun& odd, const BranchRun& even,
                            const config::Thresholds& th, double reference_m0) {
  const Grid& g = c.grid();
  const ParameterSchedule& s = c.schedule();
  SeparationReport r;
  r.t_star = 1.0 / (s.lambda(1) * s.lambda(1));
  const double horizon = std::min(odd.solution.levels.front().snapshots.back().t,
                                  even.solution.levels.front().snapshots.back().t);
  if (horizon < r.t_star * (1.0 - 1e-12))
    throw std::invalid_argument("iteration: horizon " + num(horizon) + " is shorter than t* = " + num(r.t_star));
  const int top_odd = odd.levels.back(), top_even = even.levels.back();
  const VectorField uo = assembled_fields(c, odd, top_odd, r.t_star).first;
  const VectorField ue = assembled_fields(c, even, top_even, r.t_star).first;
  r.difference = besov_minus1(g, diff(uo, ue));
  const double m0 = besov_minus1(g, c.level(1).wh->w(r.t_star));
  r.m0 = m0;
  for (const BranchRun* b : {&odd, &even}) {
    for (std::size_t k = 0; k < b->levels.size(); ++k) {
      const int n = b->levels[k];
      const VectorField wm = fields::inverse(b->solution.levels[k].at(r.t_star).w);
      r.perturbation = std::max(r.perturbation, besov_minus1(g, wm));
      if (n >= 2) {
        const LevelFlows& lf = c.level(n);
        VectorField w = lf.wh->w(r.t_star);
        if (!lf.wi.empty()) add_to(w, lf.wi.w(r.t_star));
        add_to(w, wm);
        r.contamination += besov_minus1(g, w);
      }
    }
  }
  const double denom = reference_m0 > 0.0 ? reference_m0 : m0;
  r.ratio = ratio_of(r.difference, denom);
  r.scale_ratio = s.level_count() >= 2 ? s.lambda(2) / s.lambda(1) : 0.0;
  const bool scale_ok = r.scale_ratio >= th.scale_ratio;
  const bool small_ok = r.perturbation <= th.perturbation_fraction * m0;
  r.regime_ok = scale_ok && small_ok;
  std::ostringstream note;
  if (r.regime_ok) {
    note << "regime holds";
  } else {
    note << "regime flagged:";
    if (!scale_ok) note << " lambda_2/lambda_1 = " << num(r.scale_ratio) << " < " << num(th.scale_ratio);
    if (!small_ok)
      note << " perturbation/M0 = " << num(ratio_of(r.perturbation, m0)) << " > " << num(th.perturbation_fraction);
  }
  r.regime_note = note.str();
  return r;
}

SeparationReport separation_experiment(const config::RunConfig& rc) {
  const Grid g(rc.separation.grid, rc.grid.dealias);
  const ParameterSchedule s = make_schedule(rc.separation.schedule, g);
  if (s.level_count() < 2) throw std::invalid_argument("iteration: the separation schedule needs two levels");
  solver::SolverConfig cfg = rc.solver;
  double ell_min = s.levels.front().ell;
  for (const auto& l : s.levels) ell_min = std::min(ell_min, l.ell);
  cfg.ell_min = ell_min;
  // Only t* = lambda_1^{-2} is read, so the branches stop there.
  solver::RunPlan plan;
  plan.check_times = {1.0 / (s.lambda(2) * s.lambda(2)), 1.0 / (s.lambda(1) * s.lambda(1))};
  plan.t_end = plan.check_times.back();
  plan.series_p = s.p;
  const VectorField seed = magnetic_seed(g, rc.seed);

  SeparationReport rep;
  {
    const Construction c(g, s, 2);
    const BranchRun odd = solve_branch(c, Parity::Odd, 2, seed, cfg, plan);
    const BranchRun even = solve_branch(c, Parity::Even, 2, seed, cfg, plan);
    rep = separation(c, odd, even, rc.thresholds);
    const BranchRun again = solve_branch(c, Parity::Odd, 2, seed, cfg, plan);
    const VectorField a = assembled_fields(c, odd, 1, rep.t_star).first;
    const VectorField b = assembled_fields(c, again, 1, rep.t_star).first;
    rep.identical_difference = besov_minus1(g, diff(a, b));
  }
  ParameterSchedule s0 = s;
  s0.eps0 = 0.0;
  const Construction c0(g, s0, 2);
  const BranchRun odd0 = solve_branch(c0, Parity::Odd, 2, seed, cfg, plan);
  const BranchRun even0 = solve_branch(c0, Parity::Even, 2, seed, cfg, plan);
  const SeparationReport ablated = separation(c0, odd0, even0, rc.thresholds, rep.m0);
  rep.ablation_difference = ablated.difference;
  rep.ablation_ratio = ablated.ratio;
  rep.collapse = rep.ablation_ratio > 0.0 ? rep.ratio / rep.ablation_ratio : std::numeric_limits<double>::infinity();
  return rep;
}

std::vector<MismatchRow> mismatch_series(const Construction& c) {
  std::vector<MismatchRow> out;
  for (int n = 1; n <= c.level_count(); n += 2) out.push_back({n, besov_minus2(c.grid(), c.level(n).wh->w(0.0))});
  return out;
}

std::vector<DiagnosticRow> inductive_estimates(const Construction& c, const BranchRun& b,
                                               const solver::RunPlan& plan) {
  const Grid& g = c.grid();
  const ParameterSchedule& s = c.schedule();
  const double p = s.p;
  double c0 = 0.0;
  for (int n = 1; n <= c.level_count(); ++n) c0 = std::max(c0, c.level(n).c0);
  const double c34 = std::pow(c0, 0.75);
  const std::string blocks = block_range(g);
  std::vector<DiagnosticRow> rows;
  auto emit = [&](int n, const std::string& name, const std::string& jr, double measured, double bound,
                  const std::string& horizon) {
    const std::string q = "level" + std::to_string(n) + "/" + name;
    rows.push_back({q + "/measured", jr, measured, horizon});
    rows.push_back({q + "/bound", jr, bound, horizon});
    rows.push_back({q + "/ratio", jr, ratio_of(measured, bound), horizon});
  };

  for (std::size_t k = 0; k < b.levels.size(); ++k) {
    const int n = b.levels[k];
    const solver::LevelSolution& ls = b.solution.levels[k];

    // ||(u_n, B_n)||_{L^2_T L^2} from the per-step series.
    std::vector<double> ts, e;
    for (const auto& rec : ls.series) {
      if (!ts.empty() && rec.t <= ts.back()) continue;
      ts.push_back(rec.t);
      e.push_back(rec.u_l2 * rec.u_l2 + rec.b_l2 * rec.b_l2);
    }
    const std::string series_h = "series:0.." + num(ts.empty() ? 0.0 : ts.back());
    emit(n, "uB_L2TL2", "none", std::sqrt(trapezoid(ts, e)), 2.0 * c34 * n * std::pow(2.0, -0.5 * n), series_h);

    // Besov norms of (u_n, B_n) and of the perturbation at the snapshots.
    norms::BesovSpec b0{0.0, norms::kInf, 1.0};
    norms::BesovSpec b2{2.0, norms::kInf, 1.0};
    norms::BesovSpec bm{-2.0 / p, 2.0, 1.0};
    std::vector<double> st, ub2;
    double ub0 = 0.0, wm0 = 0.0, wmneg = 0.0, small = 0.0;
    for (const auto& snap : ls.snapshots) {
      const auto [u, B] = assembled_fields(c, b, n, snap.t);
      ub0 = std::max(ub0, norms::besov_norm(g, u, b0) + norms::besov_norm(g, B, b0));
      st.push_back(snap.t);
      ub2.push_back(norms::besov_norm(g, u, b2) + norms::besov_norm(g, B, b2));
      const VectorField wm = fields::inverse(snap.w), dm = fields::inverse(snap.d);
      wm0 = std::max(wm0, norms::besov_norm(g, wm, b0) + norms::besov_norm(g, dm, b0));
      wmneg = std::max(wmneg, norms::besov_norm(g, wm, bm) + norms::besov_norm(g, dm, bm));
      if (std::abs(snap.t * s.lambda(n) * s.lambda(n) - 1.0) < 1e-9) {
        const LevelFlows& lf = c.level(n);
        VectorField v = lf.wh->w(snap.t);
        if (!lf.wi.empty()) add_to(v, lf.wi.w(snap.t));
        small = ratio_of(fields::l2_norm(g, wm), fields::l2_norm(g, v));
      }
    }
    const std::string snap_h = "snapshots:" + std::to_string(st.size()) + ":0.." + num(st.back());
    emit(n, "uB_LinfB0inf1", blocks, ub0, c0 * s.lambda(n), snap_h);
    emit(n, "uB_L1B2inf1", blocks, trapezoid(st, ub2), c0 * s.lambda(n), snap_h);
    emit(n, "wmdm_LinfB0inf1", blocks, wm0, std::pow(s.lambda(n), 2.0 * s.r), snap_h);
    if (n >= 2) emit(n, "wmdm_LinfB-2/p21", blocks, wmneg, std::pow(s.lambda(n - 1), -20.0), snap_h);
    rows.push_back({"level" + std::to_string(n) + "/wm_over_explicit_L2", "none", small,
                    "t=" + num(1.0 / (s.lambda(n) * s.lambda(n)))});

    // w^(h)_n on a geometric time ladder.
    const flow::HeatFlow& wh = *c.level(n).wh;
    const std::vector<double> tl = ladder(s.lambda(n), plan.t_end);
    std::vector<double> lp2, w1p;
    for (double t : tl) {
      const double a = norms::lebesgue(g, wh.w(t), p);
      lp2.push_back(a * a);
      w1p.push_back(a + lp(g, wh.grad_w(t), p));
    }
    const std::string ladder_h = "ladder:" + std::to_string(tl.size()) + ":0.." + num(plan.t_end);
    const double bound = c34 * std::pow(2.0, -double(n) / p);
    emit(n, "wh_L2tLp", "none", std::sqrt(trapezoid(tl, lp2)), bound, ladder_h);
    emit(n, "wh_L1tW1p", "none", trapezoid(tl, w1p), bound, ladder_h);
  }
  for (auto& r : rows)
    if (!std::isfinite(r.value) && !(std::isinf(r.value) && r.quantity.ends_with("/ratio")))
      throw std::runtime_error("iteration: non-finite diagnostic " + r.quantity);
  return rows;
}

std::vector<DiagnosticRow> support_areas(const Construction& c) {
  const auto& cut = c.cutoffs();
  std::vector<DiagnosticRow> rows;
  for (int n = 1; n <= c.level_count(); ++n) {
    const VectorField w = c.level(n).wh->w(0.0);
    const Field mag = (w[0].square() + w[1].square()).sqrt();
    rows.push_back({"support/wh_level" + std::to_string(n), "none", cut.support_area(mag), "t=0"});
  }
  for (int m = 1; m <= c.level_count(); ++m) {
    const Field chi = cut.chi_field(m);
    rows.push_back({"support/chi_" + std::to_string(m), "none", cut.support_area(chi), "static"});
    rows.push_back({"support/chi_eta_" + std::to_string(m), "none", cut.support_area(chi * cut.eta_field(m)),
                    "static"});
  }
  return rows;
}


InitialDataCheck initial_data(const Construction& c, const BranchRun& odd, const BranchRun* even) {
  InitialDataCheck out;
  auto same = [](const Spectrum& a, const Spectrum& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), sizeof(a(0, 0)) * std::size_t(a.size())) == 0;
  };
  auto same_field = [](const Field& a, const Field& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), sizeof(double) * std::size_t(a.size())) == 0;
  };
  if (even) {
    // B_{2q+1}(0) and B_{2q+2}(0) are sums of the same seed multiples.
    for (std::size_t k = 0; k < odd.levels.size() && k < even->levels.size(); ++k) {
      const solver::Snapshot& so = odd.solution.levels[k].snapshots.front();
      const solver::Snapshot& se = even->solution.levels[k].snapshots.front();
      for (int i = 0; i < 2; ++i) out.magnetic_shared = out.magnetic_shared && same(so.d[i], se.d[i]);
      ++out.matched_pairs;
    }
  }
  for (int n = 2; n <= c.level_count(); ++n) {
    const VectorField wi = c.level(n).wi.w(0.0), wh = c.level(n - 1).wh->w(0.0);
    for (int i = 0; i < 2; ++i) out.cascade_exact = out.cascade_exact && same_field(wi[i], wh[i]);
  }
  if (even) {
    for (int n = 3; n <= c.level_count(); n += 2) {
      if (std::find(even->levels.begin(), even->levels.end(), n - 1) == even->levels.end()) continue;
      const VectorField ue = assembled_fields(c, *even, n - 1, 0.0).first;
      const VectorField uo = assembled_fields(c, odd, n, 0.0).first;
      const VectorField wh = c.level(n).wh->w(0.0);
      const double scale = fields::max_abs(wh);
      const VectorField d = {ue[0] - uo[0] + wh[0], ue[1] - uo[1] + wh[1]};
      out.chain_defect = std::max(out.chain_defect, ratio_of(fields::max_abs(d), scale));
    }
  }
  return out;
}

RunResult run_iteration(const config::RunConfig& rc, int levels, const Log& log) {
  const auto start = std::chrono::steady_clock::now();
  auto say = [&](const std::string& m) {
    if (log) log(m);
  };
  RunResult r;
  r.plan = default_plan(rc.schedule, levels);
  say("building explicit flows of levels 1.." + std::to_string(levels));
  r.construction = std::make_unique<Construction>(rc.grid, rc.schedule, levels);
  const Construction& c = *r.construction;
  for (int n = 2; n <= levels; ++n)
    say("level " + std::to_string(n) + ": C_0 = " + num(c.level(n).c0) +
        ", max amplitude argument = " + num(c.level(n).max_argument));
  const VectorField seed = magnetic_seed(rc.grid, rc.seed);
  say("solving the odd branch");
  r.odd = solve_branch(c, Parity::Odd, levels, seed, rc.solver, r.plan);
  r.steps += r.odd.solution.steps;
  if (levels >= 2) {
    say("solving the even branch");
    r.even = std::make_unique<BranchRun>(solve_branch(c, Parity::Even, levels, seed, rc.solver, r.plan));
    r.steps += r.even->solution.steps;
  }
  for (int n = 1; n <= levels; ++n) {
    say("residual check of level " + std::to_string(n));
    const residual::FloorResult floor = manufactured_floor(rc, rc.grid, rc.schedule.lambda(n), r.plan);
    const BranchRun& b = (n % 2 == 1) ? r.odd : *r.even;
    r.checks.push_back(check_level(c, b, n, r.plan, floor, rc.thresholds.residual_factor));
  }
  const std::vector<errors::Ablation> ablations = {errors::Ablation::None, errors::Ablation::DropE1,
                                                   errors::Ablation::DropE2, errors::Ablation::DropE3,
                                                   errors::Ablation::DropPressure};
  for (int n = 2; n <= levels; ++n) {
    say("decomposition identity of level " + std::to_string(n));
    const double ln = rc.schedule.lambda(n);
    const auto rows = errors::verify_decomposition(c.context(n), {0.0, 1.0 / (ln * ln), 2.0 / (ln * ln)}, ablations);
    r.decomposition.insert(r.decomposition.end(), rows.begin(), rows.end());
  }
  say("initial data and diagnostics");
  r.initial = initial_data(c, r.odd, r.even.get());
  r.mismatch = mismatch_series(c);
  r.diagnostics = inductive_estimates(c, r.odd, r.plan);
  if (r.even) {
    const auto rows = inductive_estimates(c, *r.even, r.plan);
    r.diagnostics.insert(r.diagnostics.end(), rows.begin(), rows.end());
  }
  const auto areas = support_areas(c);
  r.diagnostics.insert(r.diagnostics.end(), areas.begin(), areas.end());
  for (const auto& m : r.mismatch)
    r.diagnostics.push_back({"mismatch/wh_level" + std::to_string(m.level) + "_B-2inf1", block_range(c.grid()),
                             m.norm, "t=0"});
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace mhd::iteration
