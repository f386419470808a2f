#include "mhd/heat_flow.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "mhd/fft.hpp"

namespace mhd::flow {
namespace {

constexpr int K = 5;
using J5 = Jet2<double, K>;

template <std::size_t C, typename Get>
std::array<Field, C> combine(const std::vector<FlowTerm>& terms, double t, bool derivative, Get&& get) {
  std::array<Field, C> out;
  bool first = true;
  for (const auto& term : terms) {
    const auto& src = get(term);
    if (src[0].size() == 0) throw std::logic_error("flow: requested a field that was not built");
    double f = std::exp(-double(term.rate) * t);
    if (derivative) f *= -double(term.rate);
    for (std::size_t c = 0; c < C; ++c) {
      if (first) out[c] = f * src[c];
      else out[c] += f * src[c];
    }
    first = false;
  }
  return out;
}

// Derivative samples d1^i d2^j of the trigonometric polynomial with spectrum s.
std::vector<Field> derivative_samples(const Grid& g, const Spectrum& s) {
  std::vector<Field> out(jet_size(K));
  bool constant = true;
  for (Eigen::Index r = 0; r < s.rows() && constant; ++r)
    for (Eigen::Index c = 0; c < s.cols(); ++c)
      if ((r != 0 || c != 0) && s(r, c) != std::complex<double>(0.0)) {
        constant = false;
        break;
      }
  for (int n = 0; n <= K; ++n)
    for (int i = n; i >= 0; --i) {
      const int j = n - i;
      if (constant) {
        out[jet_index(i, j)] = (n == 0) ? Field::Constant(g.N, g.N, s(0, 0).real()) : g.zeros();
        continue;
      }
      Spectrum d(s.rows(), s.cols());
      for (int r = 0; r < g.N; ++r) {
        const std::complex<double> f2 = std::pow(std::complex<double>(0.0, g.ke2(r)), j);
        for (int c = 0; c < g.nc(); ++c)
          d(r, c) = s(r, c) * f2 * std::pow(std::complex<double>(0.0, g.ke1(c)), i);
      }
      out[jet_index(i, j)] = inverse(d);
    }
  return out;
}

}  // namespace

SparseJets<5> envelope_jets(const LevelGeometry& geo, const cutoffs::CutoffFamily& cut, std::size_t P) {
  const Grid& g = cut.grid();
  const int n = geo.level;
  SparseJets<5> out;
  for (int i = 0; i < g.N; ++i)
    for (int j = 0; j < g.N; ++j) {
      const double x1 = g.x(j), x2 = g.x(i);
      if (!cut.in_box(n, x1, x2)) continue;  // eta_{n-1} vanishes outside O_n
      J5 G = cut.eta_jet<K>(n - 1, x1, x2);
      if (geo.pipes) {
        if (std::abs(cutoffs::wrap_phase(cut.phase(n, P, x1, x2))) >= cut.profile().half_width()) continue;
        G = G * cut.pipe_jet<K>(n, P, x1, x2);
        if (n - 1 >= 2) G = G * cut.chi_jet<K>(n - 1, x1, x2);
      }
      bool nonzero = false;
      for (double v : G.c)
        if (v != 0.0) {
          nonzero = true;
          break;
        }
      if (!nonzero) continue;
      out.index.push_back(i * g.N + j);
      out.jet.push_back(G);
    }
  return out;
}

HeatFlow build_heat_flow(const LevelGeometry& geo, const cutoffs::CutoffFamily& cut,
                         const amplitude::AmplitudeSet& amp, const BuildOptions& options) {
  const Grid& g = cut.grid();
  if (amp.pair_count() != geo.set.pair_count())
    throw std::invalid_argument("flow: amplitude set does not match the direction set");
  HeatFlow hf;
  hf.geometry_ = geo;
  hf.grid_ = g;
  hf.amp_ = amp;
  hf.has_grad_r_ = options.potential_gradient;

  const double lam = double(geo.lambda);
  const double l3 = 1.0 / (lam * lam * lam);

  std::vector<SparseJets<5>> env;
  for (std::size_t P = 0; P < geo.set.pair_count(); ++P) env.push_back(envelope_jets(geo, cut, P));

  for (std::size_t r = 0; r < amp.term_count(); ++r) {
    std::vector<Field> psi(jet_size(K), g.zeros());
    VectorField M = g.zero_vector();
    VectorField rem = g.zero_vector();
    for (std::size_t P = 0; P < geo.set.pair_count(); ++P) {
      const auto da = derivative_samples(g, amp.alpha[P][r]);
      const auto& k = geo.set.pair_representative(P);
      const double k1 = k.vec()(0), k2 = k.vec()(1);
      const double kp1 = k.perp()(0), kp2 = k.perp()(1);
      const auto& E = env[P];
      for (std::size_t n = 0; n < E.index.size(); ++n) {
        const int idx = E.index[n];
        const int i = idx / g.N, j = idx % g.N;
        const double x1 = g.x(j), x2 = g.x(i);
        J5 a;
        for (int m = 0; m < jet_size(K); ++m) a.c[m] = da[m].data()[idx];
        for (int p = 0; p <= K; ++p)
          for (int q = 0; p + q <= K; ++q) a.at(p, q) /= factorial(p) * factorial(q);
        Taylor1<double, K> cs, sn;
        cos_sin_series<double, K>(lam * (k1 * x1 + k2 * x2), cs, sn);
        const J5 C = jet_from_linear(cs, lam * k1, lam * k2);
        const J5 A = a * E.jet[n];
        const J5 AC = A * C;
        for (int m = 0; m < jet_size(K); ++m) psi[m].data()[idx] += -2.0 * lam * AC.c[m];
        const double s0 = sn.c[0], c0 = cs.c[0];
        const double mval = -2.0 * lam * A.value() * s0;
        M[0].data()[idx] += mval * kp1;
        M[1].data()[idx] += mval * kp2;
        // Remainder from its own formula:
        //   2 lambda^{-1} Delta A sin(theta) k_perp + 4 (k . grad A) cos(theta) k_perp
        //   + 2 lambda^{-2} Delta(cos(theta) grad_perp A)
        const double lapA = A.d(2, 0) + A.d(0, 2);
        const double kgradA = k1 * A.d(1, 0) + k2 * A.d(0, 1);
        const J5 v1 = C * A.d2();
        const J5 v2 = -(C * A.d1());
        const double lap1 = v1.d(2, 0) + v1.d(0, 2), lap2 = v2.d(2, 0) + v2.d(0, 2);
        const double coef = 2.0 / lam * lapA * s0 + 4.0 * kgradA * c0;
        rem[0].data()[idx] += coef * kp1 + 2.0 / (lam * lam) * lap1;
        rem[1].data()[idx] += coef * kp2 + 2.0 / (lam * lam) * lap2;
      }
    }

    FlowTerm term;
    term.rate = long(geo.lambda) * long(geo.lambda) + amp.rates[r];
    auto D = [&](int i, int j) -> const Field& { return psi[jet_index(i, j)]; };
    // Taylor coefficients to derivatives: d1^i d2^j = c_ij i! j!.
    auto Dd = [&](int i, int j) { return Field(D(i, j) * (factorial(i) * factorial(j))); };
    const Field d11 = Dd(1, 1), d20 = Dd(2, 0), d02 = Dd(0, 2);
    const Field d21 = Dd(2, 1), d12 = Dd(1, 2), d30 = Dd(3, 0), d03 = Dd(0, 3);
    const Field d31 = Dd(3, 1), d13 = Dd(1, 3), d22 = Dd(2, 2), d40 = Dd(4, 0), d04 = Dd(0, 4);
    const Field d41 = Dd(4, 1), d23 = Dd(2, 3), d05 = Dd(0, 5), d50 = Dd(5, 0), d32 = Dd(3, 2), d14 = Dd(1, 4);
    term.W = {-l3 * (d21 + d03), l3 * (d30 + d12)};
    term.gradW = {-l3 * (d31 + d13), -l3 * (d22 + d04), l3 * (d40 + d22), l3 * (d31 + d13)};
    term.lapW = {-l3 * (d41 + 2.0 * d23 + d05), l3 * (d50 + 2.0 * d32 + d14)};
    term.R = {-2.0 * l3 * d11, -l3 * (d02 - d20), 2.0 * l3 * d11};
    if (options.potential_gradient) {
      term.gradR = {-2.0 * l3 * d21, -2.0 * l3 * d12, -l3 * (d12 - d30), -l3 * (d03 - d21), 2.0 * l3 * d21,
                    2.0 * l3 * d12};
    }
    term.M = M;
    const double scale = std::max(fields::max_abs(term.W), 1e-300);
    const double dev = std::max(((M[0] + rem[0]) - term.W[0]).abs().maxCoeff(),
                                ((M[1] + rem[1]) - term.W[1]).abs().maxCoeff());
    hf.split_residual_ = std::max(hf.split_residual_, fields::max_abs(term.W) > 0.0 ? dev / scale : dev);
    hf.terms_.push_back(std::move(term));
  }
  return hf;
}

VectorField HeatFlow::w(double t) const {
  return combine<2>(terms_, t, false, [](const FlowTerm& x) -> const VectorField& { return x.W; });
}
VectorField HeatFlow::principal(double t) const {
  return combine<2>(terms_, t, false, [](const FlowTerm& x) -> const VectorField& { return x.M; });
}
VectorField HeatFlow::remainder(double t) const {
  VectorField a = w(t), m = principal(t);
  return {a[0] - m[0], a[1] - m[1]};
}
VectorField HeatFlow::dt_w(double t) const {
  return combine<2>(terms_, t, true, [](const FlowTerm& x) -> const VectorField& { return x.W; });
}
VectorField HeatFlow::lap_w(double t) const {
  return combine<2>(terms_, t, false, [](const FlowTerm& x) -> const VectorField& { return x.lapW; });
}
Gradient HeatFlow::grad_w(double t) const {
  return combine<4>(terms_, t, false, [](const FlowTerm& x) -> const Gradient& { return x.gradW; });
}
SymTensorField HeatFlow::potential(double t) const {
  return combine<3>(terms_, t, false, [](const FlowTerm& x) -> const SymTensorField& { return x.R; });
}
SymTensorField HeatFlow::dt_potential(double t) const {
  return combine<3>(terms_, t, true, [](const FlowTerm& x) -> const SymTensorField& { return x.R; });
}
TensorGradient HeatFlow::grad_potential(double t) const {
  return combine<6>(terms_, t, false, [](const FlowTerm& x) -> const TensorGradient& { return x.gradR; });
}

std::vector<amplitude::RatedTensor> HeatFlow::potential_terms() const {
  std::vector<amplitude::RatedTensor> out;
  for (const auto& t : terms_) out.push_back({t.rate, t.R});
  return out;
}

VectorField InverseCascadeFlow::w(double t) const {
  VectorField v = prev_->w(t);
  const double f = factor(t);
  return {v[0] * f, v[1] * f};
}

VectorField InverseCascadeFlow::dt_w(double t) const {
  const VectorField v = prev_->w(t), dv = prev_->dt_w(t);
  const double f = factor(t), mu = 2.0 * double(lambda_) * double(lambda_);
  return {f * (dv[0] - mu * v[0]), f * (dv[1] - mu * v[1])};
}

VectorField InverseCascadeFlow::lap_w(double t) const {
  VectorField v = prev_->lap_w(t);
  const double f = factor(t);
  return {v[0] * f, v[1] * f};
}

Gradient InverseCascadeFlow::grad_w(double t) const {
  Gradient gr = prev_->grad_w(t);
  const double f = factor(t);
  for (auto& x : gr) x *= f;
  return gr;
}

VectorField inverse_cascade_from_decomposition(const HeatFlow& previous, const cutoffs::CutoffFamily& cut,
                                               const geometry::DirectionSet& set,
                                               const geometry::AffineDecomposition& dec, long lambda_n, double t) {
  const Grid& g = cut.grid();
  const int n = previous.level() + 1;
  const TensorGradient gR = previous.grad_potential(t);
  VectorField out = g.zero_vector();
  for (std::size_t P = 0; P < set.pair_count(); ++P) {
    const auto kp = set.pair_representative(P).perp();
    const auto& L = dec.linear[P];
    // k_perp . grad of L_P(T) = L0 T11 + L1 T12 + L2 T22
    const Field dir = L(0) * (kp(0) * gR[0] + kp(1) * gR[1]) + L(1) * (kp(0) * gR[2] + kp(1) * gR[3]) +
                      L(2) * (kp(0) * gR[4] + kp(1) * gR[5]);
    out[0] += kp(0) * dir;
    out[1] += kp(1) * dir;
  }
  const Field cutoff = cut.eta_field(n - 1) * cut.chi_field(n - 1);
  const Field c2 = cutoff.square() * std::exp(-2.0 * double(lambda_n) * double(lambda_n) * t);
  return {out[0] * c2, out[1] * c2};
}

double support_identity_defect(const HeatFlow& previous, const cutoffs::CutoffFamily& cut, int level_n) {
  const VectorField w0 = previous.w(0.0);
  const Field c = cut.eta_field(level_n - 1) * cut.chi_field(level_n - 1);
  const Field c2 = c.square() - 1.0;
  const double scale = fields::max_abs(w0);
  if (scale == 0.0) return 0.0;
  return std::max((c2 * w0[0]).abs().maxCoeff(), (c2 * w0[1]).abs().maxCoeff()) / scale;
}

}  // namespace mhd::flow
