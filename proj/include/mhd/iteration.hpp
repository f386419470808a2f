#pragma once
// The two-branch induction: explicit flows of every level are built in global
// order 1, 2, 3, ...; the perturbation systems of the odd levels and of the
// even levels are then solved in lockstep, one solver run per branch, and the
// assembled pairs
//   u_n = u_{n-2} + w^(h)_n + w^(i)_n + w^(m)_n,   B_n = B_{n-2} + d^(m)_n
// are residual-checked, compared across branches and reported.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mhd/config.hpp"
#include "mhd/cutoffs.hpp"
#include "mhd/error_terms.hpp"
#include "mhd/geometry.hpp"
#include "mhd/heat_flow.hpp"
#include "mhd/mhd_solver.hpp"
#include "mhd/residual.hpp"
#include "mhd/schedule.hpp"

namespace mhd::iteration {

struct LevelFlows {
  int level = 0;
  double c0 = 0.0;            // C_0 of this level's amplitudes (0 at level 1)
  double max_argument = 0.0;  // largest ||T_{n-1} / (1000 C_0)||_F seen by the amplitudes
  std::unique_ptr<flow::HeatFlow> wh;
  flow::InverseCascadeFlow wi;  // empty at level 1
};

// Explicit flows of levels 1..K.  Level n >= 2 reads the tensor potential of
// level n - 1, which belongs to the other branch.
class Construction {
 public:
  Construction(const Grid& grid, const ParameterSchedule& schedule, int levels);

  const Grid& grid() const { return grid_; }
  const ParameterSchedule& schedule() const { return schedule_; }
  const cutoffs::CutoffFamily& cutoffs() const { return *cut_; }
  const geometry::DirectionSet& directions() const { return set_; }
  const geometry::AffineDecomposition& decomposition() const { return dec_; }
  int level_count() const { return int(levels_.size()); }
  const LevelFlows& level(int n) const { return levels_.at(std::size_t(n - 1)); }

  // Context of the decomposition identity at level n >= 2.
  errors::LevelContext context(int n) const;
  // Solver input of level n: explicit velocity, rates and the perturbation
  // data (0, lambda_{2 ceil(n/2) - 1}^{-50} f).
  solver::LevelSpec spec(int n, const VectorField& seed) const;

 private:
  Grid grid_;
  ParameterSchedule schedule_;
  geometry::DirectionSet set_;
  geometry::AffineDecomposition dec_;
  std::unique_ptr<cutoffs::CutoffFamily> cut_;
  std::vector<LevelFlows> levels_;
};

// Seed f = grad_perp of a Gaussian (effectively compact in O_0), max |f| = amplitude.
VectorField magnetic_seed(const Grid& g, const config::SeedConfig& seed);
// lambda_{2 ceil(n/2) - 1}^{-50}
double seed_scale(const ParameterSchedule& s, int n);

enum class Parity { Odd, Even };
std::string parity_name(Parity p);
std::vector<int> branch_levels(Parity p, int top);

// Check times {lambda_n^{-2} : n <= K} and 2 lambda_1^{-2}; horizon from the schedule.
solver::RunPlan default_plan(const ParameterSchedule& s, int levels);

struct BranchRun {
  Parity parity = Parity::Odd;
  std::vector<int> levels;
  std::vector<solver::LevelSpec> specs;
  solver::BranchSolution solution;
};

BranchRun solve_branch(const Construction& c, Parity parity, int top, const VectorField& seed,
                       const solver::SolverConfig& cfg, const solver::RunPlan& plan);

// Assembled (u_n, B_n) of a branch at a check time; n must belong to the branch.
residual::AssembledState assembled(const Construction& c, const BranchRun& b, int n, double t);

struct LevelCheck {
  int level = 0;
  std::vector<residual::MhdResidual> residuals;  // per check time
  double max_residual = 0.0;                     // max of velocity and magnetic relative residuals
  double floor = 0.0;                            // manufactured-solution relative error
  double floor_residual = 0.0;                   // manufactured-solution relative residual
  double max_divergence = 0.0;                   // relative spectral divergence of the snapshots
  bool passed = false;                           // max_residual <= factor * floor
};

// Manufactured-solution floor at the level's rate lambda_n^2 with the same
// grid, solver configuration and the check times up to 2 lambda_n^{-2}.
residual::FloorResult manufactured_floor(const config::RunConfig& rc, const Grid& g, double lambda,
                                         const solver::RunPlan& plan);

LevelCheck check_level(const Construction& c, const BranchRun& b, int n, const solver::RunPlan& plan,
                       const residual::FloorResult& floor, double factor);

// Relative spectral divergence max_k |k . s(k)| / max_k |k| |s(k)| over snapshot fields.
double snapshot_divergence(const Grid& g, const VectorSpectrum& s);

struct MismatchRow {
  int level = 0;        // odd level 2q + 1
  double norm = 0.0;    // ||w^(h)_{2q+1}(0)||_{B^{-2}_{inf,1}}
};

struct SeparationReport {
  double t_star = 0.0;
  double difference = 0.0;     // ||(u_odd - u_even)(t*)||_{B^{-1}_{inf,1}}
  double m0 = 0.0;             // ||w^(h)_1(t*)||_{B^{-1}_{inf,1}}
  double perturbation = 0.0;   // max over levels of ||w^(m)_n(t*)||_{B^{-1}_{inf,1}}
  double contamination = 0.0;  // sum over levels >= 2 of ||(w^(h), w^(i), w^(m))_n(t*)||_{B^{-1}_{inf,1}}
  double ratio = 0.0;          // difference / m0
  double scale_ratio = 0.0;    // lambda_2 / lambda_1
  bool regime_ok = false;      // scale ratio and perturbation smallness both hold
  std::string regime_note;
  double ablation_difference = 0.0;  // epsilon_0 = 0 control
  double ablation_ratio = 0.0;       // ablation difference / reference m0
  double collapse = 0.0;             // ratio / ablation ratio
  double identical_difference = 0.0; // odd branch against itself
};

// Branch difference at t* = lambda_1^{-2}.  `reference_m0` > 0 replaces the
// measured M_0 in the ratio (used by the epsilon_0 = 0 control).
SeparationReport separation(const Construction& c, const BranchRun& odd, const BranchRun& even,
                            const config::Thresholds& th, double reference_m0 = 0.0);

// Runs both branches for the one-level-per-branch separation setup and its
// epsilon_0 = 0 control.
SeparationReport separation_experiment(const config::RunConfig& rc);

std::vector<MismatchRow> mismatch_series(const Construction& c);

// Besov proxies used by the reports.
double besov_minus1(const Grid& g, const VectorField& v);  // B^{-1}_{inf,1}
double besov_minus2(const Grid& g, const VectorField& v);  // B^{-2}_{inf,1}

struct DiagnosticRow {
  std::string quantity;
  std::string j_range;
  double value = 0.0;
  std::string horizon;
};

// Desk-scale analogues of the inductive estimates of a branch, reported as
// (measured, bound at face value, ratio) triples.  Asserts only finiteness.
std::vector<DiagnosticRow> inductive_estimates(const Construction& c, const BranchRun& b,
                                               const solver::RunPlan& plan);

// Support areas of w^(h)_n(0) and of chi_{n-1} eta_{n-1}.
std::vector<DiagnosticRow> support_areas(const Construction& c);


// Initial-data structure of the two branches.
struct InitialDataCheck {
  bool magnetic_shared = true;    // B_odd(0) and B_even(0) agree bit for bit at matched levels
  int matched_pairs = 0;
  bool cascade_exact = true;      // w^(i)_n(0) == w^(h)_{n-1}(0) bit for bit for every n >= 2
  double chain_defect = 0.0;      // max |u_{2q}(0) - u_{2q+1}(0) + w^(h)_{2q+1}(0)| / max |w^(h)_{2q+1}(0)|
};

InitialDataCheck initial_data(const Construction& c, const BranchRun& odd, const BranchRun* even);

// One complete run: construction in global level order, both branch solves,
// residual checks, decomposition identities and the report tables.
struct RunResult {
  std::unique_ptr<Construction> construction;
  solver::RunPlan plan;
  BranchRun odd;
  std::unique_ptr<BranchRun> even;  // absent for a single level
  std::vector<LevelCheck> checks;   // levels 1..K
  std::vector<errors::ResidualRow> decomposition;  // levels >= 2, all ablations
  InitialDataCheck initial;
  std::vector<MismatchRow> mismatch;
  std::vector<DiagnosticRow> diagnostics;
  long steps = 0;
  double wall_seconds = 0.0;
};

using Log = std::function<void(const std::string&)>;

RunResult run_iteration(const config::RunConfig& rc, int levels, const Log& log = {});

}  // namespace mhd::iteration
