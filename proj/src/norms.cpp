#include "mhd/norms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mhd/fft.hpp"
#include "mhd/smooth.hpp"

namespace mhd::norms {

double low_pass(double xi) { return smooth_step(2.0 - std::abs(xi)); }

double block_symbol(int j, double xi) {
  const double hi = low_pass(xi / std::ldexp(1.0, j));
  const double lo = low_pass(xi / std::ldexp(1.0, j - 1));
  return hi - lo;
}

int top_block(const Grid& g) {
  const double kmax = std::sqrt(2.0) * (g.N / 2);
  int j = 0;
  while (std::ldexp(1.0, j) < kmax) ++j;
  return j;
}

int representable_block(const Grid& g) {
  int j = 0;
  while (std::ldexp(1.0, j + 1) <= g.N / 3.0) ++j;
  return j;
}

Spectrum block_spectrum(const Grid& g, const Spectrum& s, int j) {
  Spectrum out(s.rows(), s.cols());
  for (int i = 0; i < g.N; ++i)
    for (int c = 0; c < g.nc(); ++c) {
      const double xi = std::hypot(double(g.k1(c)), double(g.k2(i)));
      out(i, c) = (xi == 0.0) ? std::complex<double>(0.0) : s(i, c) * block_symbol(j, xi);
    }
  return out;
}

std::vector<Block> lp_blocks(const Grid& g, const Field& f, double* mean_out) {
  const Spectrum s = forward(f);
  if (mean_out) *mean_out = s(0, 0).real();
  std::vector<Block> out;
  for (int j = 0; j <= top_block(g); ++j) out.push_back({j, inverse(block_spectrum(g, s, j))});
  return out;
}

double lebesgue(const Grid& g, const Field& f, double p) {
  if (std::isinf(p)) return f.size() ? f.abs().maxCoeff() : 0.0;
  if (p == 2.0) return std::sqrt(f.square().sum() * g.h * g.h);
  return std::pow(f.abs().pow(p).sum() * g.h * g.h, 1.0 / p);
}

double lebesgue(const Grid& g, const VectorField& v, double p) {
  const Field mag = (v[0].square() + v[1].square()).sqrt();
  return lebesgue(g, mag, p);
}

void validate(const Grid& g, const BesovSpec& spec) {
  if (!(spec.p >= 1.0) || !(spec.q >= 1.0)) {
    std::ostringstream os;
    os << "norms: Besov exponents p = " << spec.p << ", q = " << spec.q << " must lie in [1, inf]";
    throw std::invalid_argument(os.str());
  }
  const int jmax = spec.j_max < 0 ? representable_block(g) : spec.j_max;
  if (spec.j_min < 0 || jmax < spec.j_min || std::ldexp(1.0, jmax) > g.N / 3.0 + 1e-9)
    throw std::invalid_argument("norms: dyadic range is not representable on the grid");
}

namespace {

double combine(const std::vector<double>& terms, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double x : terms) m = std::max(m, x);
    return m;
  }
  double s = 0.0;
  for (double x : terms) s += std::pow(x, q);
  return std::pow(s, 1.0 / q);
}

template <typename BandNorm>
double besov_impl(const Grid& g, const BesovSpec& spec, BandNorm&& band_norm) {
  validate(g, spec);
  const int jmax = spec.j_max < 0 ? representable_block(g) : spec.j_max;
  std::vector<double> terms;
  for (int j = spec.j_min; j <= jmax; ++j) terms.push_back(std::pow(2.0, j * spec.s) * band_norm(j));
  return combine(terms, spec.q);
}

}  // namespace

double besov_norm(const Grid& g, const Field& f, const BesovSpec& spec) {
  const Spectrum s = forward(f);
  return besov_impl(g, spec, [&](int j) { return lebesgue(g, inverse(block_spectrum(g, s, j)), spec.p); });
}

double besov_norm(const Grid& g, const VectorField& v, const BesovSpec& spec) {
  const Spectrum s0 = forward(v[0]), s1 = forward(v[1]);
  return besov_impl(g, spec, [&](int j) {
    const VectorField b{inverse(block_spectrum(g, s0, j)), inverse(block_spectrum(g, s1, j))};
    return lebesgue(g, b, spec.p);
  });
}

double time_norm(const std::vector<double>& t, const std::vector<double>& values, double r) {
  if (t.size() != values.size() || t.size() < 2) throw std::invalid_argument("norms: time series needs >= 2 samples");
  if (std::isinf(r)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (std::size_t n = 0; n + 1 < t.size(); ++n) {
    const double a = std::pow(std::abs(values[n]), r), b = std::pow(std::abs(values[n + 1]), r);
    s += 0.5 * (t[n + 1] - t[n]) * (a + b);
  }
  return std::pow(s, 1.0 / r);
}

double space_time_norm(const Grid& g, const std::vector<Snapshot>& series, const TimeSeriesNorm& spec) {
  if (series.size() < 2) throw std::invalid_argument("norms: space-time norm needs at least 2 snapshots");
  std::vector<double> t;
  for (std::size_t n = 0; n < series.size(); ++n) {
    if (n > 0 && !(series[n].t > series[n - 1].t))
      throw std::invalid_argument("norms: snapshot times must be strictly increasing");
    t.push_back(series[n].t);
  }
  if (spec.lebesgue_only || spec.order == Ordering::Standard) {
    std::vector<double> values;
    for (const auto& s : series)
      values.push_back(spec.lebesgue_only ? lebesgue(g, s.v, spec.spatial.p) : besov_norm(g, s.v, spec.spatial));
    return time_norm(t, values, spec.r);
  }
  validate(g, spec.spatial);
  const int jmax = spec.spatial.j_max < 0 ? representable_block(g) : spec.spatial.j_max;
  std::vector<VectorSpectrum> spectra;
  for (const auto& s : series) spectra.push_back({forward(s.v[0]), forward(s.v[1])});
  std::vector<double> terms;
  for (int j = spec.spatial.j_min; j <= jmax; ++j) {
    std::vector<double> values;
    for (const auto& sp : spectra) {
      const VectorField b{inverse(block_spectrum(g, sp[0], j)), inverse(block_spectrum(g, sp[1], j))};
      values.push_back(lebesgue(g, b, spec.spatial.p));
    }
    terms.push_back(std::pow(2.0, j * spec.spatial.s) * time_norm(t, values, spec.r));
  }
  return combine(terms, spec.spatial.q);
}

}  // namespace mhd::norms
