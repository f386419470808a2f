#pragma once
// Mollified Mikado amplitudes.
//
// For a pair P with pair value v_P(X) = base_P + L_P : X from the affine
// decomposition, the amplitude is
//   a_P(t, x) = sqrt(2000 C_0) * (time and space mollification of sqrt(v_P(X) / 2))
// with X = R_prev(t, x) / (1000 C_0).  Because R_prev is a finite sum of
// separable terms e^{-nu t} R_nu(x), the square root is expanded in the small
// quantity delta_P = L_P(X) / base_P to a fixed order, every power is again a
// sum of exponentials in t, the time mollification acts on each exponential
// exactly and the space mollification is a Fourier multiplier.  The result is
//   a_P(t, x) = sum_r e^{-rate_r t} alpha_{P,r}(x)
// with each alpha_{P,r} a trigonometric polynomial stored by its spectrum.

#include <vector>

#include "mhd/fields.hpp"
#include "mhd/geometry.hpp"
#include "mhd/grid.hpp"

namespace mhd::amplitude {

// One separable term of a tensor field: e^{-rate t} R(x).
struct RatedTensor {
  long rate = 0;
  SymTensorField R;
};

struct AmplitudeSet {
  std::vector<long> rates;                    // per term
  std::vector<std::vector<Spectrum>> alpha;   // [pair][term]
  double c0 = 0.0;
  double max_argument = 0.0;                  // max over samples of ||X||_F

  std::size_t pair_count() const { return alpha.size(); }
  std::size_t term_count() const { return rates.size(); }
  // a_P(t) on the grid.
  Field field(std::size_t P, double t) const;
};

// Constant amplitude a on every pair (rate 0).
AmplitudeSet constant_amplitude(const Grid& g, std::size_t pairs, double value);

// max over sample times and grid points of ||sum_nu e^{-nu t} R_nu||_F.
double max_frobenius(const std::vector<RatedTensor>& R, const std::vector<double>& times);

// Sample times used for the ball check: 0 and a geometric ladder resolving
// every rate present.
std::vector<double> ball_check_times(const std::vector<RatedTensor>& R);

// Builds the amplitude set.  Throws std::domain_error reporting the largest
// ||X||_F when the argument leaves the sigma ball.
AmplitudeSet build_amplitudes(const Grid& g, const std::vector<RatedTensor>& prev,
                              const geometry::AffineDecomposition& dec, double c0,
                              const fields::MollifierPair& moll, int order, double sigma);

// Coefficients binom(1/2, j).
double half_binomial(int j);

}  // namespace mhd::amplitude
