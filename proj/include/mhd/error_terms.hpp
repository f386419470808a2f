#pragma once
// The exact decomposition div(w^(h) (x) w^(h)) + d_t w^(i) = E1 + E2 + E3 + grad(P1 + P2)
// of a level n >= 2, and the forcings F, G of the perturbation system.
//
// With g = lambda^2 e^{-2 lambda^2 t}, A_k the pair envelope of direction k,
// and sums over ordered direction pairs (j, k) with j + k != 0:
//   P1 = g/2 sum (1 - j_perp . k_perp) A_j A_k cos(lambda (j + k) . x)
//   E1 = -g sum [(k_perp . grad(A_j A_k)) j_perp + (1 - j_perp . k_perp) grad(A_j A_k) / 2] cos(lambda (j + k) . x)
//   E2 = g sum_k (k_perp . grad)(chi^2 eta^2 phi_k^2 [a_k^2 - Q_k]) k_perp
//      + g sum_k (k_perp . grad)(chi^2 eta^2 (phi_k^2 - 1) Q_k) k_perp,   Q_k = 2000 C_0 a_k^2(Id + T_{n-1} / (1000 C_0))
//   P2 = 2000 C_0 g chi^2 eta^2
//   E3 = div(m (x) r + r (x) m + r (x) r) + e^{-2 lambda^2 t} d_t w^(h)_{n-1}
// where m, r are the principal and remainder parts of w^(h)_n.  Every term is
// evaluated pointwise from Taylor jets, so the identity holds to roundoff.

#include <array>
#include <string>
#include <vector>

#include "mhd/cutoffs.hpp"
#include "mhd/geometry.hpp"
#include "mhd/heat_flow.hpp"

namespace mhd::errors {

using flow::Gradient;

// (Y . grad) X with X given by its gradient.
VectorField advect(const Gradient& gradX, const VectorField& Y);
Field divergence_of(const Gradient& g);

struct ErrorSample {
  double t = 0.0;
  VectorField lhs;                 // div(w (x) w) + d_t w^(i)
  VectorField E1, E2a, E2b, E3;    // E2 = E2a + E2b
  VectorField gradP1, gradP2;
  Field P1, P2;
};

struct LevelContext {
  const flow::HeatFlow* current = nullptr;   // w^(h)_n
  const flow::HeatFlow* previous = nullptr;  // w^(h)_{n-1}
  const cutoffs::CutoffFamily* cut = nullptr;
  geometry::AffineDecomposition dec;
  double c0 = 0.0;  // C_0 used by the level-n amplitudes
};

ErrorSample compute_errors(const LevelContext& ctx, double t);

enum class Ablation { None, DropE1, DropE2, DropE3, DropPressure };
std::string ablation_tag(Ablation a);

// ||lhs - E - grad P||_2 / max(||lhs||_2, floor) for one sample.
double decomposition_residual(const Grid& g, const ErrorSample& s, Ablation a = Ablation::None, double floor = 1e-300);

struct ResidualRow {
  int level = 0;
  double t = 0.0;
  double residual = 0.0;
  std::string tag;
};

// Residual rows for every sample time and ablation.
std::vector<ResidualRow> verify_decomposition(const LevelContext& ctx, const std::vector<double>& times,
                                              const std::vector<Ablation>& ablations);

// Background of the same-parity branch at time t: u_{n-2}, B_{n-2}.
struct Background {
  VectorField U, B;
  Gradient gradU, gradB;
};

Background zero_background(const Grid& g);

// Explicit velocity V = w^(h)_n + w^(i)_n and its derivatives at time t.
struct ExplicitVelocity {
  VectorField V, dtV, lapV;
  Gradient gradV;
};

ExplicitVelocity explicit_velocity(const flow::HeatFlow& wh, const flow::InverseCascadeFlow& wi, double t);

// F = (d_t - Delta) w^(h) - Delta w^(i) + div(w^(h) (x) (w^(i) + U) + (w^(i) + U) (x) w^(h)
//     + w^(i) (x) U + U (x) w^(i) + w^(i) (x) w^(i)).
VectorField forcing_F(const flow::HeatFlow& wh, const flow::InverseCascadeFlow& wi, const Background& bg, double t);
// G = V . grad B - B . grad V.
VectorField forcing_G(const ExplicitVelocity& ev, const Background& bg);
// Pointwise momentum defect d_t V - Delta V + (V . grad) V + (U . grad) V + (V . grad) U,
// equal to E + F + grad P.
VectorField momentum_defect(const ExplicitVelocity& ev, const Background& bg);

}  // namespace mhd::errors
