#pragma once
// Pseudo-spectral solver for the forced perturbation system of one branch.
//
// Levels of the same parity are advanced in lockstep.  For a level with
// explicit velocity V = w^(h) + w^(i), background (U, B) built from the lower
// levels of the branch (explicit parts plus their solver states), and
// U~ = U + V, the unknowns (w, d) = (w^(m), d^(m)) satisfy
//   d_t w = Delta w - P[(U~ + w) . grad w + w . grad U~ - d . grad d - B . grad d - d . grad B + F_mom]
//   d_t d = Delta d - P[(U~ + w) . grad d + w . grad B - d . grad(U~ + w) - B . grad w + G]
// with P the Leray projector composed with the dealiasing truncation,
//   F_mom = d_t V - Delta V + (V . grad) V + (U . grad) V + (V . grad) U = E + F + grad P_E
// evaluated pointwise, and G = V . grad B - B . grad V.  The Laplacian is
// integrated exactly.  The default step is the third-order exponential
// Runge-Kutta scheme of Cox and Matthews, whose phi-function weights integrate
// the Duhamel term exactly for frozen forcing, so stiff modes with
// |k|^2 dt >> 1 relax to their quasi-steady value.  The alternative
// integrating-factor step uses the third-order Heun tableau, whose stage nodes
// 0, 1/3, 2/3 only ever need decaying factors e^{-|k|^2 tau}, tau >= 0.

#include <chrono>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhd/fields.hpp"
#include "mhd/grid.hpp"
#include "mhd/heat_flow.hpp"

namespace mhd::solver {

using flow::Gradient;

enum class Integrator { Etd3, IfRk3 };

struct SolverConfig {
  Integrator integrator = Integrator::Etd3;
  double cfl = 0.35;           // dt <= cfl h / max |velocity coefficients|
  double rate_factor = 0.5;    // dt <= rate_factor / (active explicit rate)
  double dt_fixed = 0.0;       // > 0 selects a fixed step (still landing on check times)
  double dt_max = 1e-2;
  double ell_min = 0.0;        // > 0 enforces dt <= ell_min / 4
  double window_fraction = 1.0 / 40.0;  // > 0: difference window steps <= this times the check time
  double blowup_factor = 1e3;  // abort when max |w|, |d| exceed this times the data scale
  bool elsasser = false;       // integrate (a, c) = (w + d, w - d) instead of (w, d)
  long max_steps = 2000000;
  // Called after every accepted step with (step count, t, dt).
  std::function<void(long, double, double)> progress;
};

// Raised when the run cannot continue (CFL violation or blow-up).
class SolverAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Physical-space data of the explicit velocity at one time.
struct ExplicitData {
  VectorField V, dtV, lapV;
  Gradient gradV;
};

struct LevelSpec {
  int level = 1;
  // Explicit velocity provider; empty means V = 0.
  std::function<ExplicitData(double)> explicit_velocity;
  // Decay rates present in V (used by the step-size policy).
  std::vector<double> rates;
  // Initial data, projected and truncated to the band before use.
  VectorField w0, d0;
  // Optional additional forcing (f_w, f_d) on the right-hand side:
  //   d_t w - Delta w + ... = f_w,  d_t d - Delta d + ... = f_d.
  std::function<std::pair<VectorField, VectorField>(double)> extra_forcing;
  // false drops F_mom and G (pure perturbation dynamics).
  bool explicit_forcing = true;
};

struct Snapshot {
  double t = 0.0;
  VectorSpectrum w, d;
  // One-sided fourth-order time derivative from five uniform steps; empty at t = 0.
  VectorSpectrum dw_dt, dd_dt;
  double dt_used = 0.0;
};

struct SeriesRecord {
  double t = 0.0;
  double w_l2 = 0.0, d_l2 = 0.0, w_max = 0.0, d_max = 0.0;
  double grad_w_l2 = 0.0, grad_d_l2 = 0.0;  // L2 norms of the gradients
  double lp_w = 0.0;                        // ||w||_{L^p} with the configured p
  double grad_lp_w = 0.0;                   // ||grad w||_{L^p}
  double u_l2 = 0.0, b_l2 = 0.0;            // L2 norms of the assembled u_n and B_n
};

struct LevelSolution {
  int level = 1;
  std::vector<Snapshot> snapshots;  // t = 0 and every check time
  std::vector<SeriesRecord> series; // every accepted step
  const Snapshot& at(double t) const;
};

struct BranchSolution {
  std::vector<LevelSolution> levels;
  long steps = 0;
  double wall_seconds = 0.0;
  double min_dt = 0.0, max_dt = 0.0;
};

struct RunPlan {
  std::vector<double> check_times;  // snapshots with time derivatives
  double t_end = 0.0;
  double series_p = 4.0;            // exponent of the recorded L^p norm
};

BranchSolution solve_branch(const Grid& g, const std::vector<LevelSpec>& levels, const SolverConfig& config,
                            const RunPlan& plan);

// Band-limited spectral toolkit shared by the solver, the residual and the tests.
class Spectral {
 public:
  explicit Spectral(const Grid& g);
  const Grid& grid() const { return g_; }
  // Dealias truncation and Leray projection in place.
  void truncate(VectorSpectrum& s) const;
  void truncate(Spectrum& s) const;
  void project(VectorSpectrum& s) const;
  Gradient gradient(const VectorSpectrum& s) const;
  VectorSpectrum laplacian(const VectorSpectrum& s) const;
  // e^{-|k|^2 tau} s
  VectorSpectrum heat(const VectorSpectrum& s, double tau) const;
  void heat_inplace(VectorSpectrum& s, double tau) const;
  // p = -Delta^{-1} div N
  Field pressure(const VectorField& N) const;
  const Field& k_squared() const { return kk_; }

 private:
  Grid g_;
  Field k1_, k2_, kk_;
  Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> mask_;
};

// Seed f = grad_perp psi with psi = exp(-|x|^2 / (2 s^2)), scaled to max |f| = amplitude.
VectorField magnetic_seed(const Grid& g, double width, double amplitude);

// Advection (Y . grad) X with X given by its gradient.
VectorField advect(const Gradient& gX, const VectorField& Y);

}  // namespace mhd::solver
