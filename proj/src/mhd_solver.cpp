#include "mhd/mhd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "mhd/fft.hpp"
#include "mhd/jets.hpp"

namespace mhd::solver {
namespace {

using cd = std::complex<double>;

VectorField add(const VectorField& a, const VectorField& b) { return {a[0] + b[0], a[1] + b[1]}; }
Gradient add(const Gradient& a, const Gradient& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]}; }
void add_to(VectorField& a, const VectorField& b) {
  a[0] += b[0];
  a[1] += b[1];
}
void add_to(Gradient& a, const Gradient& b) {
  for (int c = 0; c < 4; ++c) a[c] += b[c];
}
void sub_from(VectorField& a, const VectorField& b) {
  a[0] -= b[0];
  a[1] -= b[1];
}
double max_speed(const VectorField& v) { return (v[0].square() + v[1].square()).sqrt().maxCoeff(); }

VectorSpectrum axpy(const VectorSpectrum& x, double a, const VectorSpectrum& y) {
  return {x[0] + a * y[0], x[1] + a * y[1]};
}

struct LevelState {
  VectorSpectrum w, d;
};

struct StageOutput {
  std::vector<VectorSpectrum> rw, rd;  // right-hand sides -N + f
  double vmax = 0.0;                   // max speed of velocity and field coefficients
  double wdmax = 0.0;                  // max |w|, |d| over levels
};

Gradient zero_gradient(const Grid& g) { return {g.zeros(), g.zeros(), g.zeros(), g.zeros()}; }

// Grid L^p norm of the pointwise Euclidean magnitude, scaled by the maximum
// first so that tiny fields do not underflow.
double lp_norm(const Grid& g, const Field& mag, double p) {
  const double m = mag.maxCoeff();
  if (!(m > 0.0)) return 0.0;
  return m * std::pow((mag / m).pow(p).sum() * g.h * g.h, 1.0 / p);
}

double lp_norm(const Grid& g, const VectorField& v, double p) {
  return lp_norm(g, Field((v[0].square() + v[1].square()).sqrt()), p);
}

double lp_norm(const Grid& g, const Gradient& gv, double p) {
  return lp_norm(g, Field((gv[0].square() + gv[1].square() + gv[2].square() + gv[3].square()).sqrt()), p);
}

// Coefficients of the third-order exponential Runge-Kutta step for
// u' = -|k|^2 u + N with z = -|k|^2 dt:
//   a = e^{z/2} u + (dt/2) phi1(z/2) N(u)
//   b = e^{z} u + dt phi1(z) (2 N(a) - N(u))
//   u_new = e^{z} u + dt [(phi1 - 3 phi2 + 4 phi3) N(u) + (4 phi2 - 8 phi3) N(a) + (4 phi3 - phi2) N(b)]
// with phi_j(z) = sum_i z^i / (i + j)!.
struct EtdCoefficients {
  double dt = -1.0;
  Field e_half, e_full, phi1_half, phi1_full, b1, b2, b3;
  EtdCoefficients() = default;
  EtdCoefficients(const Field& kk, double h) : dt(h) {
    e_half.resize(kk.rows(), kk.cols());
    e_full = phi1_half = phi1_full = b1 = b2 = b3 = e_half;
    for (Eigen::Index n = 0; n < kk.size(); ++n) {
      const double z = -kk.data()[n] * h;
      double p1, p2, p3, q1;
      phis(z, p1, p2, p3);
      double unused2, unused3;
      phis(0.5 * z, q1, unused2, unused3);
      e_half.data()[n] = std::exp(0.5 * z);
      e_full.data()[n] = std::exp(z);
      phi1_half.data()[n] = 0.5 * h * q1;
      phi1_full.data()[n] = h * p1;
      b1.data()[n] = h * (p1 - 3.0 * p2 + 4.0 * p3);
      b2.data()[n] = h * (4.0 * p2 - 8.0 * p3);
      b3.data()[n] = h * (4.0 * p3 - p2);
    }
  }
  static void phis(double z, double& p1, double& p2, double& p3) {
    if (std::abs(z) < 0.5) {
      // Taylor series; 16 terms reach double precision for |z| < 1/2.
      p1 = p2 = p3 = 0.0;
      double zi = 1.0;
      for (int i = 0; i < 16; ++i) {
        p1 += zi / factorial(i + 1);
        p2 += zi / factorial(i + 2);
        p3 += zi / factorial(i + 3);
        zi *= z;
      }
      return;
    }
    const double ez = std::exp(z);
    p1 = (ez - 1.0) / z;
    p2 = (ez - 1.0 - z) / (z * z);
    p3 = (ez - 1.0 - z - 0.5 * z * z) / (z * z * z);
  }
};

}  // namespace

VectorField advect(const Gradient& gX, const VectorField& Y) {
  return {Y[0] * gX[0] + Y[1] * gX[1], Y[0] * gX[2] + Y[1] * gX[3]};
}

const Snapshot& LevelSolution::at(double t) const {
  for (const auto& s : snapshots)
    if (std::abs(s.t - t) <= 1e-12 * std::max(1.0, std::abs(t))) return s;
  std::ostringstream os;
  os << "solver: no snapshot of level " << level << " at t = " << t;
  throw std::out_of_range(os.str());
}

Spectral::Spectral(const Grid& g) : g_(g) {
  k1_.resize(g.N, g.nc());
  k2_.resize(g.N, g.nc());
  kk_.resize(g.N, g.nc());
  mask_.resize(g.N, g.nc());
  for (int r = 0; r < g.N; ++r)
    for (int c = 0; c < g.nc(); ++c) {
      k1_(r, c) = g.ke1(c);
      k2_(r, c) = g.ke2(r);
      kk_(r, c) = double(g.k1(c)) * g.k1(c) + double(g.k2(r)) * g.k2(r);
      mask_(r, c) = g.retained(r, c) ? 1.0 : 0.0;
    }
}

void Spectral::truncate(Spectrum& s) const { s *= mask_.cast<cd>(); }
void Spectral::truncate(VectorSpectrum& s) const {
  truncate(s[0]);
  truncate(s[1]);
}

void Spectral::project(VectorSpectrum& s) const {
  for (int r = 0; r < g_.N; ++r)
    for (int c = 0; c < g_.nc(); ++c) {
      const double a = k1_(r, c), b = k2_(r, c);
      const double q = a * a + b * b;
      if (q == 0.0) continue;
      const cd dot = (a * s[0](r, c) + b * s[1](r, c)) / q;
      s[0](r, c) -= a * dot;
      s[1](r, c) -= b * dot;
    }
}

Gradient Spectral::gradient(const VectorSpectrum& s) const {
  const cd I(0.0, 1.0);
  Gradient out;
  const Spectrum ik1 = I * k1_.cast<cd>(), ik2 = I * k2_.cast<cd>();
  out[0] = inverse(Spectrum(s[0] * ik1));
  out[1] = inverse(Spectrum(s[0] * ik2));
  out[2] = inverse(Spectrum(s[1] * ik1));
  out[3] = inverse(Spectrum(s[1] * ik2));
  return out;
}

VectorSpectrum Spectral::laplacian(const VectorSpectrum& s) const {
  const Spectrum m = (-kk_).cast<cd>();
  return {s[0] * m, s[1] * m};
}

VectorSpectrum Spectral::heat(const VectorSpectrum& s, double tau) const {
  VectorSpectrum out = s;
  heat_inplace(out, tau);
  return out;
}

void Spectral::heat_inplace(VectorSpectrum& s, double tau) const {
  if (tau == 0.0) return;
  const Spectrum f = (-kk_ * tau).exp().cast<cd>();
  s[0] *= f;
  s[1] *= f;
}

Field Spectral::pressure(const VectorField& N) const {
  const cd I(0.0, 1.0);
  const Spectrum n1 = forward(N[0]), n2 = forward(N[1]);
  Spectrum p(g_.N, g_.nc());
  for (int r = 0; r < g_.N; ++r)
    for (int c = 0; c < g_.nc(); ++c) {
      const double q = kk_(r, c);
      // -Delta^{-1} div N: (i k . N) / |k|^2
      p(r, c) = q == 0.0 ? cd(0.0) : I * (k1_(r, c) * n1(r, c) + k2_(r, c) * n2(r, c)) / q;
    }
  return inverse(p);
}

VectorField magnetic_seed(const Grid& g, double width, double amplitude) {
  const double s2 = width * width;
  // psi = exp(-|x|^2 / (2 s^2)); f = (d2 psi, -d1 psi)
  Field f1(g.N, g.N), f2(g.N, g.N);
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) {
      const double x1 = g.x(j), x2 = g.x(i);
      const double psi = std::exp(-(x1 * x1 + x2 * x2) / (2.0 * s2));
      f1(i, j) = -x2 / s2 * psi;
      f2(i, j) = x1 / s2 * psi;
    }
  const double m = std::max(max_speed({f1, f2}), 1e-300);
  return {f1 * (amplitude / m), f2 * (amplitude / m)};
}

BranchSolution solve_branch(const Grid& g, const std::vector<LevelSpec>& levels, const SolverConfig& cfg,
                            const RunPlan& plan) {
  const auto start = std::chrono::steady_clock::now();
  const Spectral sp(g);
  const std::size_t L = levels.size();
  if (L == 0) throw std::invalid_argument("solver: no levels to solve");
  if (!(plan.t_end > 0.0)) throw std::invalid_argument("solver: t_end must be positive");
  std::vector<double> targets = plan.check_times;
  targets.push_back(plan.t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  if (targets.front() <= 0.0) throw std::invalid_argument("solver: check times must be positive");
  if (targets.back() > plan.t_end * (1.0 + 1e-12))
    throw std::invalid_argument("solver: a check time lies beyond t_end");

  BranchSolution out;
  out.levels.resize(L);
  std::vector<LevelState> state(L);
  double scale = 0.0;
  for (std::size_t k = 0; k < L; ++k) {
    out.levels[k].level = levels[k].level;
    const VectorField w0 = levels[k].w0[0].size() ? levels[k].w0 : g.zero_vector();
    const VectorField d0 = levels[k].d0[0].size() ? levels[k].d0 : g.zero_vector();
    state[k].w = fields::forward(w0);
    state[k].d = fields::forward(d0);
    for (auto* s : {&state[k].w, &state[k].d}) {
      sp.truncate(*s);
      sp.project(*s);
    }
    scale = std::max({scale, fields::max_abs(w0), fields::max_abs(d0)});
    if (levels[k].explicit_velocity) scale = std::max(scale, fields::max_abs(levels[k].explicit_velocity(0.0).V));
    Snapshot s0;
    s0.t = 0.0;
    s0.w = state[k].w;
    s0.d = state[k].d;
    out.levels[k].snapshots.push_back(std::move(s0));
  }
  const double guard = cfg.blowup_factor * std::max(scale, 1e-300);

  std::vector<double> rates;
  for (const auto& lv : levels)
    for (double r : lv.rates) rates.push_back(2.0 * r);

  auto evaluate = [&](double t, const std::vector<LevelState>& st, bool record) {
    StageOutput o;
    o.rw.resize(L);
    o.rd.resize(L);
    VectorField U = g.zero_vector(), B = g.zero_vector();
    Gradient gU = zero_gradient(g), gB = zero_gradient(g);
    for (std::size_t k = 0; k < L; ++k) {
      const LevelSpec& lv = levels[k];
      const VectorField w = fields::inverse(st[k].w), d = fields::inverse(st[k].d);
      const Gradient gw = sp.gradient(st[k].w), gd = sp.gradient(st[k].d);
      ExplicitData ex;
      const bool has_v = bool(lv.explicit_velocity);
      if (has_v) ex = lv.explicit_velocity(t);
      VectorField Ut = U;
      Gradient gUt = gU;
      if (has_v) {
        add_to(Ut, ex.V);
        add_to(gUt, ex.gradV);
      }
      const VectorField Utw = add(Ut, w);
      o.vmax = std::max({o.vmax, max_speed(Utw), max_speed(add(B, d))});
      o.wdmax = std::max({o.wdmax, fields::max_abs(w), fields::max_abs(d)});

      VectorField Fm = g.zero_vector(), G = g.zero_vector();
      if (has_v && lv.explicit_forcing) {
        Fm = ex.dtV;
        sub_from(Fm, ex.lapV);
        add_to(Fm, advect(ex.gradV, ex.V));
        add_to(Fm, advect(ex.gradV, U));
        add_to(Fm, advect(gU, ex.V));
        G = advect(gB, ex.V);
        sub_from(G, advect(ex.gradV, B));
      }

      VectorField Nw, Nd;
      if (!cfg.elsasser) {
        Nw = advect(gw, Utw);
        add_to(Nw, advect(gUt, w));
        sub_from(Nw, advect(gd, d));
        sub_from(Nw, advect(gd, B));
        sub_from(Nw, advect(gB, d));
        add_to(Nw, Fm);
        Nd = advect(gd, Utw);
        add_to(Nd, advect(gB, w));
        sub_from(Nd, advect(add(gUt, gw), d));
        sub_from(Nd, advect(gw, B));
        add_to(Nd, G);
      } else {
        const VectorField a = add(w, d), c = {w[0] - d[0], w[1] - d[1]};
        const Gradient ga = add(gw, gd);
        const Gradient gc = {gw[0] - gd[0], gw[1] - gd[1], gw[2] - gd[2], gw[3] - gd[3]};
        const VectorField Zp = add(Ut, B), Zm = {Ut[0] - B[0], Ut[1] - B[1]};
        const Gradient gZp = add(gUt, gB);
        const Gradient gZm = {gUt[0] - gB[0], gUt[1] - gB[1], gUt[2] - gB[2], gUt[3] - gB[3]};
        VectorField Na = advect(ga, add(c, Zm));
        add_to(Na, advect(gZp, c));
        add_to(Na, Fm);
        add_to(Na, G);
        VectorField Nc = advect(gc, add(a, Zp));
        add_to(Nc, advect(gZm, a));
        add_to(Nc, Fm);
        sub_from(Nc, G);
        Nw = {0.5 * (Na[0] + Nc[0]), 0.5 * (Na[1] + Nc[1])};
        Nd = {0.5 * (Na[0] - Nc[0]), 0.5 * (Na[1] - Nc[1])};
      }
      if (lv.extra_forcing) {
        const auto [fw, fd] = lv.extra_forcing(t);
        sub_from(Nw, fw);
        sub_from(Nd, fd);
      }
      VectorSpectrum rw = fields::forward(Nw), rd = fields::forward(Nd);
      for (auto* s : {&rw, &rd}) {
        sp.truncate(*s);
        sp.project(*s);
        (*s)[0] *= -1.0;
        (*s)[1] *= -1.0;
      }
      o.rw[k] = std::move(rw);
      o.rd[k] = std::move(rd);

      if (record) {
        SeriesRecord rec;
        rec.t = t;
        rec.w_l2 = fields::l2_norm(g, w);
        rec.d_l2 = fields::l2_norm(g, d);
        rec.w_max = fields::max_abs(w);
        rec.d_max = fields::max_abs(d);
        rec.grad_w_l2 = std::sqrt((gw[0].square() + gw[1].square() + gw[2].square() + gw[3].square()).sum()) * g.h;
        rec.grad_d_l2 = std::sqrt((gd[0].square() + gd[1].square() + gd[2].square() + gd[3].square()).sum()) * g.h;
        rec.lp_w = lp_norm(g, w, plan.series_p);
        rec.grad_lp_w = lp_norm(g, gw, plan.series_p);
        rec.u_l2 = fields::l2_norm(g, Utw);
        rec.b_l2 = fields::l2_norm(g, add(B, d));
        out.levels[k].series.push_back(rec);
      }

      U = Utw;
      gU = add(gUt, gw);
      add_to(B, d);
      add_to(gB, gd);
    }
    return o;
  };

  auto policy_dt = [&](double t, double vmax) {
    if (cfg.dt_fixed > 0.0) return cfg.dt_fixed;
    double dt = cfg.dt_max;
    if (vmax > 0.0) dt = std::min(dt, cfg.cfl * g.h / vmax);
    double ract = 0.0;
    for (double r : rates) ract = std::max(ract, r * std::exp(-r * t / 4.0));
    if (ract > 0.0) dt = std::min(dt, cfg.rate_factor / ract);
    if (cfg.ell_min > 0.0) dt = std::min(dt, cfg.ell_min / 4.0);
    return dt;
  };

  auto step_ifrk3 = [&](double t, double dt, const StageOutput& k1) {
    std::vector<LevelState> s2(L), s3(L);
    for (std::size_t k = 0; k < L; ++k) {
      s2[k].w = sp.heat(axpy(state[k].w, dt / 3.0, k1.rw[k]), dt / 3.0);
      s2[k].d = sp.heat(axpy(state[k].d, dt / 3.0, k1.rd[k]), dt / 3.0);
    }
    const StageOutput k2 = evaluate(t + dt / 3.0, s2, false);
    for (std::size_t k = 0; k < L; ++k) {
      s3[k].w = axpy(sp.heat(state[k].w, 2.0 * dt / 3.0), 2.0 * dt / 3.0, sp.heat(k2.rw[k], dt / 3.0));
      s3[k].d = axpy(sp.heat(state[k].d, 2.0 * dt / 3.0), 2.0 * dt / 3.0, sp.heat(k2.rd[k], dt / 3.0));
    }
    const StageOutput k3 = evaluate(t + 2.0 * dt / 3.0, s3, false);
    for (std::size_t k = 0; k < L; ++k) {
      VectorSpectrum w = axpy(state[k].w, dt / 4.0, k1.rw[k]);
      sp.heat_inplace(w, dt);
      VectorSpectrum d = axpy(state[k].d, dt / 4.0, k1.rd[k]);
      sp.heat_inplace(d, dt);
      const VectorSpectrum w3 = sp.heat(k3.rw[k], dt / 3.0), d3 = sp.heat(k3.rd[k], dt / 3.0);
      state[k].w = axpy(w, 0.75 * dt, w3);
      state[k].d = axpy(d, 0.75 * dt, d3);
    }
  };

  EtdCoefficients etd;
  auto step_etd3 = [&](double t, double dt, const StageOutput& k1) {
    if (etd.dt != dt) etd = EtdCoefficients(sp.k_squared(), dt);
    auto lin = [](const VectorSpectrum& u, const Field& e, const VectorSpectrum& n, const Field& c) {
      VectorSpectrum r;
      for (int i = 0; i < 2; ++i) r[i] = u[i] * e.cast<cd>() + n[i] * c.cast<cd>();
      return r;
    };
    std::vector<LevelState> sa(L), sb(L);
    for (std::size_t k = 0; k < L; ++k) {
      sa[k].w = lin(state[k].w, etd.e_half, k1.rw[k], etd.phi1_half);
      sa[k].d = lin(state[k].d, etd.e_half, k1.rd[k], etd.phi1_half);
    }
    const StageOutput ka = evaluate(t + dt / 2.0, sa, false);
    for (std::size_t k = 0; k < L; ++k) {
      const VectorSpectrum nw = axpy(VectorSpectrum{2.0 * ka.rw[k][0], 2.0 * ka.rw[k][1]}, -1.0, k1.rw[k]);
      const VectorSpectrum nd = axpy(VectorSpectrum{2.0 * ka.rd[k][0], 2.0 * ka.rd[k][1]}, -1.0, k1.rd[k]);
      sb[k].w = lin(state[k].w, etd.e_full, nw, etd.phi1_full);
      sb[k].d = lin(state[k].d, etd.e_full, nd, etd.phi1_full);
    }
    const StageOutput kb = evaluate(t + dt, sb, false);
    for (std::size_t k = 0; k < L; ++k) {
      for (int i = 0; i < 2; ++i) {
        state[k].w[i] = state[k].w[i] * etd.e_full.cast<cd>() + k1.rw[k][i] * etd.b1.cast<cd>() +
                        ka.rw[k][i] * etd.b2.cast<cd>() + kb.rw[k][i] * etd.b3.cast<cd>();
        state[k].d[i] = state[k].d[i] * etd.e_full.cast<cd>() + k1.rd[k][i] * etd.b1.cast<cd>() +
                        ka.rd[k][i] * etd.b2.cast<cd>() + kb.rd[k][i] * etd.b3.cast<cd>();
      }
    }
  };

  auto step = [&](double t, double dt, const StageOutput& k1) {
    if (cfg.integrator == Integrator::IfRk3) step_ifrk3(t, dt, k1);
    else step_etd3(t, dt, k1);
  };

  double t = 0.0;
  std::vector<std::vector<LevelState>> history;  // last five states of the landing run
  out.min_dt = std::numeric_limits<double>::infinity();
  for (double target : targets) {
    bool landing = false;
    long remaining_steps = 0;
    double dt_land = 0.0;
    history.clear();
    while (true) {
      const StageOutput k1 = evaluate(t, state, true);
      if (!std::isfinite(k1.wdmax) || k1.wdmax > guard) {
        std::ostringstream os;
        os << "solver: blow-up guard tripped at t = " << t << " (max |w|, |d| = " << k1.wdmax << " > " << guard
           << "); the desk-scale smallness assumptions failed";
        throw SolverAbort(os.str());
      }
      if (!landing) {
        const double dtp = policy_dt(t, k1.vmax);
        const double rem = target - t;
        double dt_next = 0.0;
        if (cfg.dt_fixed > 0.0) {
          double m = rem / dtp;
          if (std::abs(m - std::round(m)) < 1e-6) m = std::round(m);
          landing = true;
          remaining_steps = std::max<long>(5, long(std::ceil(m - 1e-9)));
          dt_land = rem / double(remaining_steps);
        } else {
          // The five-step window in front of a check time is also limited to
          // a fraction of the check time, so modes still relaxing from the
          // initial data are resolved by the difference formula.
          const double dw = cfg.window_fraction > 0.0 ? std::min(dtp, cfg.window_fraction * target) : dtp;
          if (rem <= 5.0 * dw * (1.0 + 1e-9)) {
            landing = true;
            remaining_steps = 5;
            dt_land = rem / 5.0;
          } else {
            dt_next = std::min(dtp, rem - 5.0 * dw);
          }
        }
        if (landing) {
          history.push_back(state);
        } else {
          step(t, dt_next, k1);
          t += dt_next;
          ++out.steps;
          out.min_dt = std::min(out.min_dt, dt_next);
          out.max_dt = std::max(out.max_dt, dt_next);
          if (out.steps > cfg.max_steps) throw SolverAbort("solver: step limit exceeded");
          if (cfg.progress) cfg.progress(out.steps, t, dt_next);
          continue;
        }
      }
      if (k1.vmax * dt_land > 2.0 * cfg.cfl * g.h) {
        std::ostringstream os;
        os << "solver: CFL violated at t = " << t << " with dt = " << dt_land << "; suggested dt <= "
           << cfg.cfl * g.h / k1.vmax;
        throw SolverAbort(os.str());
      }
      step(t, dt_land, k1);
      --remaining_steps;
      t = remaining_steps == 0 ? target : t + dt_land;
      ++out.steps;
      out.min_dt = std::min(out.min_dt, dt_land);
      out.max_dt = std::max(out.max_dt, dt_land);
      if (cfg.progress) cfg.progress(out.steps, t, dt_land);
      history.push_back(state);
      if (history.size() > 5) history.erase(history.begin());
      if (remaining_steps == 0) break;
    }
    // Snapshot with the one-sided fourth-order derivative.
    for (std::size_t k = 0; k < L; ++k) {
      Snapshot s;
      s.t = target;
      s.w = state[k].w;
      s.d = state[k].d;
      s.dt_used = dt_land;
      auto fd = [&](auto get) {
        const VectorSpectrum& f0 = get(history[4][k]);
        const VectorSpectrum& f1 = get(history[3][k]);
        const VectorSpectrum& f2 = get(history[2][k]);
        const VectorSpectrum& f3 = get(history[1][k]);
        const VectorSpectrum& f4 = get(history[0][k]);
        VectorSpectrum r;
        for (int c = 0; c < 2; ++c)
          r[c] = (25.0 * f0[c] - 48.0 * f1[c] + 36.0 * f2[c] - 16.0 * f3[c] + 3.0 * f4[c]) / (12.0 * dt_land);
        return r;
      };
      s.dw_dt = fd([](const LevelState& x) -> const VectorSpectrum& { return x.w; });
      s.dd_dt = fd([](const LevelState& x) -> const VectorSpectrum& { return x.d; });
      out.levels[k].snapshots.push_back(std::move(s));
    }
  }
  evaluate(t, state, true);
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace mhd::solver
