#pragma once
// Run configuration: a JSON document {schedule, grid, solver, seed, thresholds}
// plus optional "separation" and "acceptance" sections.  Validation happens
// before any compute; errors are std::invalid_argument with a module prefix.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "mhd/grid.hpp"
#include "mhd/mhd_solver.hpp"
#include "mhd/schedule.hpp"

namespace mhd::config {

// Magnetic seed f = grad_perp of a Gaussian of the given width, scaled to
// max |f| = amplitude.  The perturbation data are d(0) = lambda^{-50} f.
struct SeedConfig {
  double width = 0.25;
  double amplitude = 1.0;
};

struct Thresholds {
  double decomposition = 1e-8;        // identity residual
  double ablation_gain = 1e5;         // minimal residual growth of any single-term ablation
  double residual_factor = 10.0;      // assembled residual <= factor * manufactured floor
  double divergence = 1e-12;          // relative spectral divergence of snapshots
  double separation_ratio = 0.25;
  double separation_collapse = 10.0;
  double perturbation_fraction = 1e-2;  // perturbations <= fraction * M_0 for the separation regime
  double scale_ratio = 4.0;             // lambda_2 / lambda_1 needed for the separation verdict
};

// One-level-per-branch setup used by the separation diagnostic.
struct SeparationSetup {
  int grid = 512;
  nlohmann::json schedule;  // complete schedule section
};

// Setup of the decomposition identity check.
struct DecompositionSetup {
  int grid = 1024;
  nlohmann::json schedule;
};

struct RunConfig {
  nlohmann::json document;  // the validated input, with overrides applied
  Grid grid;
  ParameterSchedule schedule;
  solver::SolverConfig solver;
  SeedConfig seed;
  Thresholds thresholds;
  std::uint64_t rng_seed = 20240601;
  int levels = 0;               // levels used by `run` (<= schedule levels)
  double mms_amplitude = 1.0;   // manufactured-solution velocity amplitude
  int mms_wavenumber = 4;
  SeparationSetup separation;
  DecompositionSetup decomposition;
  std::string smoke_config;     // config used for the determinism rerun ("" = built in)
};

struct Overrides {
  int grid = 0;    // > 0 replaces grid.N
  int levels = 0;  // > 0 replaces the level count of `run`
};

// Parses and validates; throws std::invalid_argument("config: ...") or the
// schedule's own errors.
RunConfig from_json(const nlohmann::json& doc, const Overrides& ov = {});
RunConfig load(const std::string& path, const Overrides& ov = {});

// The built-in default document (the same content as configs/default.json).
nlohmann::json default_document();
// A small document for fast end-to-end runs (determinism rerun, CLI tests).
nlohmann::json smoke_document();

solver::SolverConfig solver_from_json(const nlohmann::json& section);

}  // namespace mhd::config
