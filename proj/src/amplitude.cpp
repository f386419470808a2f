#include "mhd/amplitude.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mhd::amplitude {

double half_binomial(int j) {
  double c = 1.0;
  for (int i = 0; i < j; ++i) c *= (0.5 - i) / (i + 1.0);
  return c;
}

Field AmplitudeSet::field(std::size_t P, double t) const {
  Spectrum s = alpha.at(P).at(0) * std::exp(-double(rates[0]) * t);
  for (std::size_t r = 1; r < rates.size(); ++r) s += alpha[P][r] * std::exp(-double(rates[r]) * t);
  return inverse(s);
}

AmplitudeSet constant_amplitude(const Grid& g, std::size_t pairs, double value) {
  AmplitudeSet a;
  a.rates = {0};
  Spectrum s = g.zero_spectrum();
  s(0, 0) = value;
  a.alpha.assign(pairs, std::vector<Spectrum>{s});
  return a;
}

std::vector<double> ball_check_times(const std::vector<RatedTensor>& R) {
  std::set<double> t{0.0};
  for (const auto& term : R) {
    if (term.rate <= 0) continue;
    for (double f : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0}) t.insert(f / double(term.rate));
  }
  return {t.begin(), t.end()};
}

double max_frobenius(const std::vector<RatedTensor>& R, const std::vector<double>& times) {
  if (R.empty()) return 0.0;
  double m = 0.0;
  for (double t : times) {
    SymTensorField X = {R[0].R[0] * 0.0, R[0].R[1] * 0.0, R[0].R[2] * 0.0};
    for (const auto& term : R) {
      const double f = std::exp(-double(term.rate) * t);
      for (int c = 0; c < 3; ++c) X[c] += f * term.R[c];
    }
    const Field fro = (X[0].square() + 2.0 * X[1].square() + X[2].square()).sqrt();
    m = std::max(m, fro.maxCoeff());
  }
  return m;
}

AmplitudeSet build_amplitudes(const Grid& g, const std::vector<RatedTensor>& prev,
                              const geometry::AffineDecomposition& dec, double c0,
                              const fields::MollifierPair& moll, int order, double sigma) {
  if (!(c0 > 0.0)) throw std::invalid_argument("amplitude: C_0 must be positive");
  AmplitudeSet out;
  out.c0 = c0;
  out.max_argument = max_frobenius(prev, ball_check_times(prev)) / (1000.0 * c0);
  if (out.max_argument > sigma) {
    std::ostringstream os;
    os << "amplitude: argument leaves the sigma ball, max ||R_prev||_F / (1000 C_0) = " << out.max_argument
       << " > sigma = " << sigma << " (max ||R_prev||_F = " << out.max_argument * 1000.0 * c0
       << "; C_0 is too small for these parameters)";
    throw std::domain_error(os.str());
  }

  const Spectrum mult = moll.space_multiplier(g);
  const std::size_t pairs = dec.base.size();
  std::map<long, std::vector<Field>> by_rate;  // rate -> per pair series sum before mollification

  for (std::size_t P = 0; P < pairs; ++P) {
    const double base = dec.base[P];
    if (!(base > 0.0)) throw std::domain_error("amplitude: nonpositive baseline pair value");
    // delta_P = sum_nu e^{-nu t} D_nu
    std::map<long, Field> delta;
    for (const auto& term : prev) {
      const auto& L = dec.linear[P];
      Field D = (L(0) * term.R[0] + L(1) * term.R[1] + L(2) * term.R[2]) / (1000.0 * c0 * base);
      auto it = delta.find(term.rate);
      if (it == delta.end()) delta.emplace(term.rate, std::move(D));
      else it->second += D;
    }
    std::map<long, Field> power{{0L, Field::Ones(g.N, g.N)}};
    std::map<long, Field> series{{0L, Field::Ones(g.N, g.N)}};
    for (int j = 1; j <= order && !delta.empty(); ++j) {
      std::map<long, Field> next;
      for (const auto& [r0, f0] : power)
        for (const auto& [r1, f1] : delta) {
          Field prod = f0 * f1;
          auto it = next.find(r0 + r1);
          if (it == next.end()) next.emplace(r0 + r1, std::move(prod));
          else it->second += prod;
        }
      power = std::move(next);
      const double cj = half_binomial(j);
      for (const auto& [r, f] : power) {
        auto it = series.find(r);
        if (it == series.end()) series.emplace(r, cj * f);
        else it->second += cj * f;
      }
    }
    const double scale = std::sqrt(2000.0 * c0 * base / 2.0);
    for (auto& [r, f] : series) {
      auto& slot = by_rate[r];
      if (slot.empty()) slot.assign(pairs, g.zeros());
      slot[P] = scale * f;
    }
  }

  out.alpha.assign(pairs, {});
  for (auto& [rate, per_pair] : by_rate) {
    out.rates.push_back(rate);
    const double kappa = moll.exponential_weight(double(rate));
    for (std::size_t P = 0; P < pairs; ++P) {
      Spectrum s = forward(per_pair[P]) * mult * kappa;
      // The amplitude is the trigonometric polynomial without Nyquist lines,
      // so that spectral derivatives of it are exact.
      s.row(g.N / 2).setZero();
      s.col(g.N / 2).setZero();
      out.alpha[P].push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace mhd::amplitude
