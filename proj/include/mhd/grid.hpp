#pragma once
// Periodic grid on [-pi, pi)^2 and the sample/spectrum containers.
//
// Sample (i, j) sits at x1 = -pi + j h, x2 = -pi + i h and is stored row-major,
// so rows run along x2.  Spectra hold the N x (N/2 + 1) half plane of the
// real-to-complex transform, normalized so that the inverse transform of the
// forward transform is the identity.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mhd {

using Field = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Spectrum = Eigen::Array<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VectorField = std::array<Field, 2>;
using SymTensorField = std::array<Field, 3>;  // (11, 12, 22)
using VectorSpectrum = std::array<Spectrum, 2>;

constexpr double kPi = std::numbers::pi;

struct Grid {
  int N = 0;
  double h = 0.0;
  double dealias = 2.0 / 3.0;

  Grid() = default;
  explicit Grid(int n, double dealias_fraction = 2.0 / 3.0) : N(n), h(2.0 * kPi / n), dealias(dealias_fraction) {
    if (n < 16 || (n & (n - 1)) != 0)
      throw std::invalid_argument("fields: grid size " + std::to_string(n) + " must be a power of two >= 16");
  }
  int nc() const { return N / 2 + 1; }
  double x(int j) const { return -kPi + j * h; }
  // Signed wavenumber of spectrum row i (x2 direction).
  int k2(int i) const { return i <= N / 2 ? i : i - N; }
  // Wavenumber of spectrum column j (x1 direction).
  int k1(int j) const { return j; }
  // Wavenumbers used by derivative multipliers: Nyquist modes are dropped so
  // odd derivatives stay real and all operators compose consistently.
  double ke2(int i) const { return (i == N / 2) ? 0.0 : double(k2(i)); }
  double ke1(int j) const { return (j == N / 2) ? 0.0 : double(j); }
  // Largest retained wavenumber magnitude per axis under the dealias rule.
  double kcut() const { return dealias * N / 2.0; }
  bool retained(int i, int j) const {
    return std::abs(k2(i)) <= kcut() && std::abs(k1(j)) <= kcut();
  }
  double area() const { return 4.0 * kPi * kPi; }

  Field zeros() const { return Field::Zero(N, N); }
  Spectrum zero_spectrum() const { return Spectrum::Zero(N, nc()); }
  VectorField zero_vector() const { return {zeros(), zeros()}; }
  SymTensorField zero_tensor() const { return {zeros(), zeros(), zeros()}; }
};

}  // namespace mhd
