#include "mhd/error_terms.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "mhd/fft.hpp"
#include "mhd/fields.hpp"

namespace mhd::errors {
namespace {

using J1 = Jet2<double, 1>;

struct ValueGrad {
  Field v, d1, d2;
};

ValueGrad spectral_value_grad(const Grid& g, const Spectrum& s) {
  Spectrum s1(s.rows(), s.cols()), s2(s.rows(), s.cols());
  for (int r = 0; r < g.N; ++r)
    for (int c = 0; c < g.nc(); ++c) {
      s1(r, c) = s(r, c) * std::complex<double>(0.0, g.ke1(c));
      s2(r, c) = s(r, c) * std::complex<double>(0.0, g.ke2(r));
    }
  return {inverse(s), inverse(s1), inverse(s2)};
}

// Value and gradient of sum_r e^{-rate_r t} alpha_{P,r}.
ValueGrad amplitude_at(const Grid& g, const amplitude::AmplitudeSet& amp, std::size_t P, double t) {
  Spectrum s = amp.alpha.at(P).at(0) * std::exp(-double(amp.rates[0]) * t);
  for (std::size_t r = 1; r < amp.rates.size(); ++r) s += amp.alpha[P][r] * std::exp(-double(amp.rates[r]) * t);
  return spectral_value_grad(g, s);
}

VectorField add(const VectorField& a, const VectorField& b) { return {a[0] + b[0], a[1] + b[1]}; }
VectorField sub(const VectorField& a, const VectorField& b) { return {a[0] - b[0], a[1] - b[1]}; }

}  // namespace

VectorField advect(const Gradient& gX, const VectorField& Y) {
  return {Y[0] * gX[0] + Y[1] * gX[1], Y[0] * gX[2] + Y[1] * gX[3]};
}

Field divergence_of(const Gradient& g) { return g[0] + g[3]; }

ErrorSample compute_errors(const LevelContext& ctx, double t) {
  if (!ctx.current || !ctx.previous || !ctx.cut) throw std::invalid_argument("errors: incomplete level context");
  const flow::HeatFlow& cur = *ctx.current;
  const flow::HeatFlow& prev = *ctx.previous;
  const cutoffs::CutoffFamily& cut = *ctx.cut;
  const Grid& g = cur.grid();
  const auto& geo = cur.geometry();
  const int n = geo.level;
  if (n < 2) throw std::invalid_argument("errors: the decomposition needs a level n >= 2");
  if (!prev.has_potential_gradient()) throw std::invalid_argument("errors: previous level lacks grad T");
  const std::size_t pairs = geo.set.pair_count();
  const double lam = double(geo.lambda);
  const double e1 = std::exp(-lam * lam * t);
  const double gfac = lam * lam * e1 * e1;
  const double c0 = ctx.c0;

  // Pointwise envelopes: C = eta_{n-1} chi_{n-1} and the pipe profiles at level n.
  Field C = g.zeros(), C1 = g.zeros(), C2 = g.zeros();
  std::vector<Field> phi(pairs, g.zeros()), phi1(pairs, g.zeros()), phi2(pairs, g.zeros());
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) {
      const double x1 = g.x(j), x2 = g.x(i);
      if (!cut.in_box(n, x1, x2)) continue;
      J1 c = cut.eta_jet<1>(n - 1, x1, x2);
      if (n - 1 >= 2) c = c * cut.chi_jet<1>(n - 1, x1, x2);
      C(i, j) = c.value();
      C1(i, j) = c.d(1, 0);
      C2(i, j) = c.d(0, 1);
      for (std::size_t P = 0; P < pairs; ++P) {
        const J1 p = cut.pipe_jet<1>(n, P, x1, x2);
        phi[P](i, j) = p.value();
        phi1[P](i, j) = p.d(1, 0);
        phi2[P](i, j) = p.d(0, 1);
      }
    }

  // A_P = a_P C phi_P and its gradient.
  std::vector<Field> A(pairs), A1(pairs), A2(pairs), a2(pairs);
  for (std::size_t P = 0; P < pairs; ++P) {
    const ValueGrad a = amplitude_at(g, cur.amplitudes(), P, t);
    const Field G = C * phi[P];
    const Field G1 = C1 * phi[P] + C * phi1[P], G2 = C2 * phi[P] + C * phi2[P];
    A[P] = a.v * G;
    A1[P] = a.d1 * G + a.v * G1;
    A2[P] = a.d2 * G + a.v * G2;
    a2[P] = a.v.square();
  }

  ErrorSample s;
  s.t = t;
  s.E1 = g.zero_vector();
  s.gradP1 = g.zero_vector();
  s.P1 = g.zeros();

  // Directions j = sign_j k_{P_j}, ordered pairs with j + k != 0.
  struct Dir {
    std::size_t P;
    double k1, k2, p1, p2;
  };
  std::vector<Dir> dirs;
  for (std::size_t P = 0; P < pairs; ++P) {
    const auto& d = geo.set.pair_representative(P);
    for (double sgn : {1.0, -1.0})
      dirs.push_back({P, sgn * d.vec()(0), sgn * d.vec()(1), sgn * d.perp()(0), sgn * d.perp()(1)});
  }
  for (const Dir& dj : dirs)
    for (const Dir& dk : dirs) {
      const double s1 = dj.k1 + dk.k1, s2 = dj.k2 + dk.k2;
      if (std::abs(s1) < 1e-14 && std::abs(s2) < 1e-14) continue;
      const double jk = dj.p1 * dk.p1 + dj.p2 * dk.p2;
      const Field& Aj = A[dj.P];
      const Field& Ak = A[dk.P];
      const Field prod = Aj * Ak;
      const Field pg1 = A1[dj.P] * Ak + Aj * A1[dk.P];
      const Field pg2 = A2[dj.P] * Ak + Aj * A2[dk.P];
      Field cs(g.N, g.N), sn(g.N, g.N);
      for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j) {
          const double th = lam * (s1 * g.x(j) + s2 * g.x(i));
          cs(i, j) = std::cos(th);
          sn(i, j) = std::sin(th);
        }
      const Field kgrad = dk.p1 * pg1 + dk.p2 * pg2;
      const double half = 0.5 * (1.0 - jk);
      s.E1[0] -= gfac * (kgrad * dj.p1 + half * pg1) * cs;
      s.E1[1] -= gfac * (kgrad * dj.p2 + half * pg2) * cs;
      s.P1 += gfac * half * prod * cs;
      s.gradP1[0] += gfac * half * (pg1 * cs - prod * (lam * s1) * sn);
      s.gradP1[1] += gfac * half * (pg2 * cs - prod * (lam * s2) * sn);
    }

  // E2 and P2 from the previous potential and the pair values Q_P.
  const SymTensorField R = prev.potential(t);
  const flow::TensorGradient gR = prev.grad_potential(t);
  const Field C2f = C.square();
  const Field C2d1 = 2.0 * C * C1, C2d2 = 2.0 * C * C2;
  s.E2a = g.zero_vector();
  s.E2b = g.zero_vector();
  for (std::size_t P = 0; P < pairs; ++P) {
    const auto& d = geo.set.pair_representative(P);
    const double kp1 = d.perp()(0), kp2 = d.perp()(1);
    const auto& L = ctx.dec.linear[P];
    const Field Q = 1000.0 * c0 * ctx.dec.base[P] + L(0) * R[0] + L(1) * R[1] + L(2) * R[2];
    const Field Q1 = L(0) * gR[0] + L(1) * gR[2] + L(2) * gR[4];
    const Field Q2 = L(0) * gR[1] + L(1) * gR[3] + L(2) * gR[5];
    const Field ph2 = phi[P].square();
    const Field ph2d1 = 2.0 * phi[P] * phi1[P], ph2d2 = 2.0 * phi[P] * phi2[P];
    // f_a = chi^2 eta^2 phi^2 (a^2 - Q): derivative along k_perp from A^2 - C^2 phi^2 Q.
    const Field A2d1 = 2.0 * A[P] * A1[P], A2d2 = 2.0 * A[P] * A2[P];
    const Field CQ1 = C2d1 * ph2 * Q + C2f * ph2d1 * Q + C2f * ph2 * Q1;
    const Field CQ2 = C2d2 * ph2 * Q + C2f * ph2d2 * Q + C2f * ph2 * Q2;
    const Field da = kp1 * (A2d1 - CQ1) + kp2 * (A2d2 - CQ2);
    // f_b = chi^2 eta^2 (phi^2 - 1) Q
    const Field ph2m = ph2 - 1.0;
    const Field fb1 = C2d1 * ph2m * Q + C2f * ph2d1 * Q + C2f * ph2m * Q1;
    const Field fb2 = C2d2 * ph2m * Q + C2f * ph2d2 * Q + C2f * ph2m * Q2;
    const Field db = kp1 * fb1 + kp2 * fb2;
    // Factor 2: directions k and -k carry the same amplitude.
    s.E2a[0] += 2.0 * gfac * kp1 * da;
    s.E2a[1] += 2.0 * gfac * kp2 * da;
    s.E2b[0] += 2.0 * gfac * kp1 * db;
    s.E2b[1] += 2.0 * gfac * kp2 * db;
  }
  s.P2 = 2000.0 * c0 * gfac * C2f;
  s.gradP2 = {2000.0 * c0 * gfac * C2d1, 2000.0 * c0 * gfac * C2d2};

  // Principal part m = sum_P -2 lambda e^{-lambda^2 t} A_P sin(theta_P) k_perp and its gradient.
  VectorField m = g.zero_vector();
  Gradient gm = {g.zeros(), g.zeros(), g.zeros(), g.zeros()};
  Field divm = g.zeros();
  for (std::size_t P = 0; P < pairs; ++P) {
    const auto& d = geo.set.pair_representative(P);
    const double k1 = d.vec()(0), k2 = d.vec()(1), kp1 = d.perp()(0), kp2 = d.perp()(1);
    Field sn(g.N, g.N), cs(g.N, g.N);
    for (int i = 0; i < g.N; ++i)
      for (int j = 0; j < g.N; ++j) {
        const double th = lam * (k1 * g.x(j) + k2 * g.x(i));
        sn(i, j) = std::sin(th);
        cs(i, j) = std::cos(th);
      }
    const double f = -2.0 * lam * e1;
    const Field v = f * A[P] * sn;
    const Field b1 = f * (A1[P] * sn + A[P] * lam * k1 * cs);
    const Field b2 = f * (A2[P] * sn + A[P] * lam * k2 * cs);
    m[0] += kp1 * v;
    m[1] += kp2 * v;
    gm[0] += kp1 * b1;
    gm[1] += kp1 * b2;
    gm[2] += kp2 * b1;
    gm[3] += kp2 * b2;
    divm += f * sn * (kp1 * A1[P] + kp2 * A2[P]);
  }
  const VectorField w = cur.w(t);
  const Gradient gw = cur.grad_w(t);
  const VectorField r = sub(w, m);
  const Gradient gr = {gw[0] - gm[0], gw[1] - gm[1], gw[2] - gm[2], gw[3] - gm[3]};
  const double f2 = std::exp(-2.0 * lam * lam * t);
  const VectorField dtprev = prev.dt_w(t);
  s.E3 = add(add(advect(gm, r), advect(gr, m)), advect(gr, r));
  s.E3[0] += -m[0] * divm + f2 * dtprev[0];
  s.E3[1] += -m[1] * divm + f2 * dtprev[1];

  const VectorField wprev = prev.w(t);
  s.lhs = advect(gw, w);
  s.lhs[0] += f2 * (dtprev[0] - 2.0 * lam * lam * wprev[0]);
  s.lhs[1] += f2 * (dtprev[1] - 2.0 * lam * lam * wprev[1]);
  return s;
}

std::string ablation_tag(Ablation a) {
  switch (a) {
    case Ablation::None: return "full";
    case Ablation::DropE1: return "drop_E1";
    case Ablation::DropE2: return "drop_E2";
    case Ablation::DropE3: return "drop_E3";
    case Ablation::DropPressure: return "drop_pressure";
  }
  return "unknown";
}

double decomposition_residual(const Grid& g, const ErrorSample& s, Ablation a, double floor) {
  VectorField d = s.lhs;
  for (int c = 0; c < 2; ++c) {
    if (a != Ablation::DropE1) d[c] -= s.E1[c];
    if (a != Ablation::DropE2) d[c] -= s.E2a[c] + s.E2b[c];
    if (a != Ablation::DropE3) d[c] -= s.E3[c];
    if (a != Ablation::DropPressure) d[c] -= s.gradP1[c] + s.gradP2[c];
  }
  return fields::l2_norm(g, d) / std::max(fields::l2_norm(g, s.lhs), floor);
}

std::vector<ResidualRow> verify_decomposition(const LevelContext& ctx, const std::vector<double>& times,
                                              const std::vector<Ablation>& ablations) {
  std::vector<ResidualRow> rows;
  const Grid& g = ctx.current->grid();
  for (double t : times) {
    const ErrorSample s = compute_errors(ctx, t);
    for (Ablation a : ablations)
      rows.push_back({ctx.current->level(), t, decomposition_residual(g, s, a), ablation_tag(a)});
  }
  return rows;
}

Background zero_background(const Grid& g) {
  Background b;
  b.U = g.zero_vector();
  b.B = g.zero_vector();
  b.gradU = {g.zeros(), g.zeros(), g.zeros(), g.zeros()};
  b.gradB = b.gradU;
  return b;
}

ExplicitVelocity explicit_velocity(const flow::HeatFlow& wh, const flow::InverseCascadeFlow& wi, double t) {
  ExplicitVelocity ev;
  ev.V = wh.w(t);
  ev.dtV = wh.dt_w(t);
  ev.lapV = wh.lap_w(t);
  ev.gradV = wh.grad_w(t);
  if (!wi.empty()) {
    ev.V = add(ev.V, wi.w(t));
    ev.dtV = add(ev.dtV, wi.dt_w(t));
    ev.lapV = add(ev.lapV, wi.lap_w(t));
    const Gradient gi = wi.grad_w(t);
    for (int c = 0; c < 4; ++c) ev.gradV[c] += gi[c];
  }
  return ev;
}

VectorField forcing_F(const flow::HeatFlow& wh, const flow::InverseCascadeFlow& wi, const Background& bg, double t) {
  const Grid& g = wh.grid();
  VectorField F = sub(wh.dt_w(t), wh.lap_w(t));
  const VectorField h = wh.w(t);
  const Gradient gh = wh.grad_w(t);
  VectorField wiv = g.zero_vector();
  Gradient gi = {g.zeros(), g.zeros(), g.zeros(), g.zeros()};
  if (!wi.empty()) {
    wiv = wi.w(t);
    gi = wi.grad_w(t);
    F = sub(F, wi.lap_w(t));
  }
  const VectorField iu = add(wiv, bg.U);
  const Gradient giu = {gi[0] + bg.gradU[0], gi[1] + bg.gradU[1], gi[2] + bg.gradU[2], gi[3] + bg.gradU[3]};
  // div(X (x) Y) = (Y . grad) X for divergence-free Y.
  F = add(F, advect(gh, iu));
  F = add(F, advect(giu, h));
  F = add(F, advect(gi, bg.U));
  F = add(F, advect(bg.gradU, wiv));
  F = add(F, advect(gi, wiv));
  return F;
}

VectorField forcing_G(const ExplicitVelocity& ev, const Background& bg) {
  return sub(advect(bg.gradB, ev.V), advect(ev.gradV, bg.B));
}

VectorField momentum_defect(const ExplicitVelocity& ev, const Background& bg) {
  VectorField d = sub(ev.dtV, ev.lapV);
  d = add(d, advect(ev.gradV, ev.V));
  d = add(d, advect(ev.gradV, bg.U));
  d = add(d, advect(bg.gradU, ev.V));
  return d;
}

}  // namespace mhd::errors
