#pragma once
// Explicit flows of one level: the heat-dominated Fourier mode flow w^(h)_n,
// its principal/remainder split, its tensor potential, and the inverse-cascade
// flow w^(i)_n = w^(h)_{n-1} e^{-2 lambda_n^2 t}.
//
// With theta_P = lambda_n k_P . x and the pair envelope
//   A_P = a_P(t, x) eta_{n-1} chi_{n-1} phi(rho_n k_P . x),
// the real stream function is Psi = sum_P -2 lambda_n A_P cos(theta_P) and
//   w^(h)_n = -lambda_n^{-3} e^{-lambda_n^2 t} Delta grad_perp Psi,
//   T_n     = -lambda_n^{-3} e^{-lambda_n^2 t} (grad + grad^T) grad_perp Psi,
// so div T_n = w^(h)_n.  Level 1 uses the single pair (1, 0) with constant
// amplitude epsilon_0 / 2, cutoff eta_0 and no pipe profile, which reproduces
//   w^(h)_1 = epsilon_0 lambda_1^{-3} e^{-lambda_1^2 t} Delta grad_perp (eta_0 lambda_1 cos(lambda_1 x_1)).
// All derivatives are taken in Taylor-jet arithmetic at the grid points, so
// the identities among them hold to roundoff.

#include <array>
#include <vector>

#include "mhd/amplitude.hpp"
#include "mhd/cutoffs.hpp"
#include "mhd/geometry.hpp"
#include "mhd/grid.hpp"

namespace mhd::flow {

using Gradient = std::array<Field, 4>;       // (d1 v1, d2 v1, d1 v2, d2 v2)
using TensorGradient = std::array<Field, 6>; // (d1 T11, d2 T11, d1 T12, d2 T12, d1 T22, d2 T22)

// One separable term e^{-rate t} (profile fields).
struct FlowTerm {
  long rate = 0;
  VectorField W;
  Gradient gradW;
  VectorField lapW;
  SymTensorField R;
  TensorGradient gradR;  // empty fields unless requested
  VectorField M;         // principal part profile
};

struct LevelGeometry {
  int level = 1;
  long lambda = 1;
  long rho = 0;
  geometry::DirectionSet set;
  bool pipes = true;  // false at level 1
};

struct BuildOptions {
  bool potential_gradient = true;
};

class HeatFlow {
 public:
  HeatFlow() = default;

  int level() const { return geometry_.level; }
  long lambda() const { return geometry_.lambda; }
  const LevelGeometry& geometry() const { return geometry_; }
  const std::vector<FlowTerm>& terms() const { return terms_; }
  const amplitude::AmplitudeSet& amplitudes() const { return amp_; }
  bool has_potential_gradient() const { return has_grad_r_; }
  // max |M + independent remainder - W| / max |W| over terms.
  double split_residual() const { return split_residual_; }
  const Grid& grid() const { return grid_; }

  VectorField w(double t) const;
  VectorField principal(double t) const;
  VectorField remainder(double t) const;
  VectorField dt_w(double t) const;
  VectorField lap_w(double t) const;
  Gradient grad_w(double t) const;
  SymTensorField potential(double t) const;
  SymTensorField dt_potential(double t) const;
  TensorGradient grad_potential(double t) const;
  std::vector<amplitude::RatedTensor> potential_terms() const;

  friend HeatFlow build_heat_flow(const LevelGeometry&, const cutoffs::CutoffFamily&,
                                  const amplitude::AmplitudeSet&, const BuildOptions&);

 private:
  LevelGeometry geometry_;
  Grid grid_;
  amplitude::AmplitudeSet amp_;
  std::vector<FlowTerm> terms_;
  bool has_grad_r_ = false;
  double split_residual_ = 0.0;
};

// Builds w^(h)_n.  The cutoffs eta_{n-1} chi_{n-1} and the pipes at frequency
// rho_n come from the cutoff family.
HeatFlow build_heat_flow(const LevelGeometry& geometry, const cutoffs::CutoffFamily& cut,
                         const amplitude::AmplitudeSet& amp, const BuildOptions& options = {});

// Pair envelope jets G_P = eta_{n-1} chi_{n-1} phi_P at the nonzero points.
template <int K>
struct SparseJets {
  std::vector<int> index;  // flat row-major grid index
  std::vector<Jet2<double, K>> jet;
};
SparseJets<5> envelope_jets(const LevelGeometry& geometry, const cutoffs::CutoffFamily& cut, std::size_t P);

// Inverse-cascade flow of level n >= 2, carried by the previous heat flow.
class InverseCascadeFlow {
 public:
  InverseCascadeFlow() = default;
  InverseCascadeFlow(const HeatFlow* previous, long lambda_n) : prev_(previous), lambda_(lambda_n) {}
  bool empty() const { return prev_ == nullptr; }
  long lambda() const { return lambda_; }
  const HeatFlow* previous() const { return prev_; }

  double factor(double t) const { return std::exp(-2.0 * double(lambda_) * double(lambda_) * t); }
  VectorField w(double t) const;
  VectorField dt_w(double t) const;
  VectorField lap_w(double t) const;
  Gradient grad_w(double t) const;

 private:
  const HeatFlow* prev_ = nullptr;
  long lambda_ = 0;
};

// The tensor-divergence form chi^2 eta^2 sum_P (k_perp . grad L_P(T_{n-1})) k_perp e^{-2 lambda_n^2 t}.
VectorField inverse_cascade_from_decomposition(const HeatFlow& previous, const cutoffs::CutoffFamily& cut,
                                               const geometry::DirectionSet& set,
                                               const geometry::AffineDecomposition& dec, long lambda_n, double t);

// max |(chi^2 eta^2 - 1) w^(h)_{n-1}(0)| / max |w^(h)_{n-1}(0)| with the level-n cutoffs.
double support_identity_defect(const HeatFlow& previous, const cutoffs::CutoffFamily& cut, int level_n);

}  // namespace mhd::flow
