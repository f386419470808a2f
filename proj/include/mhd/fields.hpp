#pragma once
// Spectral differential operators, Leray projection, the tensor potential,
// mollifiers and field serialization on the periodic grid.

#include <functional>
#include <string>
#include <vector>

#include "mhd/fft.hpp"
#include "mhd/grid.hpp"

namespace mhd::fields {

enum class Op { D1, D2, Laplacian, InverseLaplacian };

// Scalar multiplier action on a spectrum.
Spectrum apply(const Grid& g, const Spectrum& s, Op op);
Field apply(const Grid& g, const Field& f, Op op);

Field d1(const Grid& g, const Field& f);
Field d2(const Grid& g, const Field& f);
Field laplacian(const Grid& g, const Field& f);
// Throws std::domain_error reporting the mean when |mean| exceeds tol * max|f|.
Field inverse_laplacian(const Grid& g, const Field& f, double tol = 1e-12);
VectorField gradient(const Grid& g, const Field& f);
// grad_perp f = (d2 f, -d1 f)
VectorField perp_gradient(const Grid& g, const Field& f);
Field divergence(const Grid& g, const VectorField& v);
// curl v = d1 v2 - d2 v1
Field curl(const Grid& g, const VectorField& v);
VectorField laplacian(const Grid& g, const VectorField& v);
// (div T)_a = d_b T_ab
VectorField divergence(const Grid& g, const SymTensorField& T);

using mhd::forward;
using mhd::inverse;
VectorSpectrum forward(const VectorField& v);
VectorField inverse(const VectorSpectrum& v);

void leray_project_inplace(const Grid& g, VectorSpectrum& v);
VectorField leray_project(const Grid& g, const VectorField& v);

// Zeroes the modes outside the dealiased band.
void dealias_inplace(const Grid& g, Spectrum& s);
Field dealias(const Grid& g, const Field& f);

// T = (grad + grad^T) Delta^{-1} w, the symmetric tensor with div T = w for
// zero-mean divergence-free w.  Throws on nonzero mean or divergence.
SymTensorField tensor_potential(const Grid& g, const VectorField& w, double tol = 1e-10);

// Sample statistics.
double max_abs(const Field& f);
double max_abs(const VectorField& v);
double max_norm(const VectorField& v);  // max over points of the Euclidean norm
double l2_norm(const Grid& g, const Field& f);
double l2_norm(const Grid& g, const VectorField& v);
double mean(const Field& f);

// Samples of a function of (x1, x2).
Field sample(const Grid& g, const std::function<double(double, double)>& fn);

// Mollifiers: nonnegative bump (1 - s^2)^m with m = 4 on the unit ball.
struct MollifierPair {
  double eps_space = 0.0;
  double eps_time = 0.0;
  int exponent = 4;
  // Time kernel phi_eps(tau), supported in (-eps_time, 0), unit continuum mass.
  double time_kernel(double tau) const;
  double time_kernel_derivative(double tau) const;
  // Discrete space kernel multiplier (unit discrete mass), cached per grid.
  Spectrum space_multiplier(const Grid& g) const;
  // Discrete mass and support check of the sampled space kernel.
  double space_mass(const Grid& g) const;
  // Weight kappa(mu) = int phi_eps(t - s) e^{-mu (s - t)} ds over s in (t, t + eps),
  // computed by Gauss-Legendre quadrature and normalized so kappa(0) = 1.
  double exponential_weight(double mu) const;
};

// Validates eps >= 2h (space) and eps >= 4 dt (time, when dt > 0).
MollifierPair make_mollifiers(const Grid& g, double eps_space, double eps_time, double dt = 0.0);

Field mollify_space(const Grid& g, const Field& f, const MollifierPair& m);
Spectrum mollify_space_spectrum(const Grid& g, const Field& f, const MollifierPair& m);

// Time mollification of a uniformly sampled scalar series by the one-sided
// kernel: out(t_n) = sum_s dt phi(t_n - s) f(s) with trapezoid weights, for
// output times whose kernel window lies inside the samples.
std::vector<double> mollify_time(const std::vector<double>& values, double dt, const MollifierPair& m);

// Raw little-endian float64 row-major component files plus a JSON sidecar.
void write_field(const std::string& stem, const Grid& g, const std::vector<const Field*>& components,
                 const std::vector<std::string>& component_names, double time, const std::string& semantic_name);
std::vector<Field> read_field(const std::string& stem, Grid* grid_out = nullptr);

}  // namespace mhd::fields
