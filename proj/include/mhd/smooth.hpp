#pragma once
// The C-infinity step S(tau) = psi(tau) / (psi(tau) + psi(1 - tau)) with
// psi(tau) = exp(-1 / tau) for tau > 0 and 0 otherwise, and its Taylor series.

#include <cmath>

#include "mhd/jets.hpp"

namespace mhd {

inline double smooth_step(double tau) {
  if (tau <= 0.0) return 0.0;
  if (tau >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / tau), b = std::exp(-1.0 / (1.0 - tau));
  return a / (a + b);
}

// Series of S about tau0 in the increment of tau.
template <int K>
Taylor1<double, K> smooth_step_series(double tau0) {
  if (tau0 <= 0.0) return Taylor1<double, K>::constant(0.0);
  if (tau0 >= 1.0) return Taylor1<double, K>::constant(1.0);
  const auto t = Taylor1<double, K>::variable(tau0);
  const auto u = Taylor1<double, K>::constant(1.0) - t;
  const auto a = exp(-reciprocal(t));
  const auto b = exp(-reciprocal(u));
  return a * reciprocal(a + b);
}

// Plateau in |y|: 1 for |y| <= inner, 0 for |y| >= outer.
inline double plateau(double y, double inner, double outer) {
  return smooth_step((outer - std::abs(y)) / (outer - inner));
}

// Series of the plateau about y0 in the increment of y.
template <int K>
Taylor1<double, K> plateau_series(double y0, double inner, double outer) {
  const double w = outer - inner;
  const double sgn = y0 < 0.0 ? -1.0 : 1.0;
  // tau = (outer - sgn * y) / w, so d tau / dy = -sgn / w.
  return smooth_step_series<K>((outer - std::abs(y0)) / w).scaled(-sgn / w);
}

}  // namespace mhd
