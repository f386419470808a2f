#pragma once
// Strong-form MHD residual of assembled solutions and the manufactured
// solution floor it is compared against.
//
// For u = sum over the branch levels of (w^(h) + w^(i) + w^(m)) and B = sum of d^(m):
//   velocity residual = ||P_band Leray(d_t u - Delta u + u . grad u - B . grad B - f_u)||_2
//   magnetic residual = ||P_band Leray(d_t B - Delta B + u . grad B - B . grad u - f_B)||_2
// Explicit parts enter with analytic time derivatives and jet-exact spatial
// derivatives; solver parts with spectral derivatives and the one-sided
// fourth-order time derivative stored in the snapshot.  Relative values divide
// by the sum of the band norms of the individual terms.

#include <functional>
#include <vector>

#include "mhd/mhd_solver.hpp"

namespace mhd::residual {

using flow::Gradient;

struct AssembledState {
  double t = 0.0;
  VectorField u, B, dtu, dtB, lapu, lapB;
  Gradient gu, gB;
};

// Sum of the explicit data and the solver snapshots of the first `count`
// levels of a branch at time t.
AssembledState assemble(const solver::Spectral& sp, const std::vector<solver::LevelSpec>& specs,
                        const solver::BranchSolution& sol, std::size_t count, double t);

struct MhdResidual {
  double t = 0.0;
  double velocity = 0.0, magnetic = 0.0;          // absolute band norms
  double velocity_rel = 0.0, magnetic_rel = 0.0;  // relative to the term scale
  double velocity_raw_rel = 0.0;                  // before the band truncation
  double magnetic_unprojected_rel = 0.0;          // band-truncated but not projected
  double scale_u = 0.0, scale_b = 0.0;
};

MhdResidual mhd_residual(const solver::Spectral& sp, const AssembledState& s,
                         const VectorField* f_u = nullptr, const VectorField* f_b = nullptr);

// Manufactured solution w* = A e^{-mu t} grad_perp psi_1, d* = A_b e^{-mu t} grad_perp psi_2
// with band-limited streams of wavenumber kappa; the forcing makes it exact.
struct ManufacturedCase {
  double amplitude = 1.0;
  double magnetic_amplitude = 0.5;
  double rate = 1.0;
  int wavenumber = 4;
};

struct FloorResult {
  double max_residual_rel = 0.0;   // residual functional, as for the assembled runs
  double max_error_rel = 0.0;      // ||w - w*|| / ||w*|| at the check times
  long steps = 0;
};

FloorResult manufactured_floor(const Grid& g, const solver::SolverConfig& cfg, const solver::RunPlan& plan,
                               const ManufacturedCase& mc);

// Exact manufactured fields at time t (velocity, magnetic).
std::pair<VectorField, VectorField> manufactured_fields(const Grid& g, const ManufacturedCase& mc, double t);

}  // namespace mhd::residual
