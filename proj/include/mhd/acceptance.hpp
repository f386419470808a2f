#pragma once
// The acceptance suite: one pass/fail verdict per criterion 1..12 with the
// pinned tolerances and runtime budgets.  Used by the `acceptance` test binary
// and by `mhdni selftest`.

#include <functional>
#include <string>
#include <vector>

#include "mhd/config.hpp"

namespace mhd::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;     // measured values against tolerances
  double seconds = 0.0;   // wall time
  double budget = 0.0;    // runtime budget in seconds (0: none)
};

struct SuiteOptions {
  std::string out_dir;  // reports of the main run, the separation run and the determinism reruns
  std::function<void(const std::string&)> log;
  // Called as soon as a criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_suite(const config::RunConfig& rc, const SuiteOptions& opt);

// Criteria 1 to 3 only (geometry and operator identities), used by
// `mhdni verify-geometry`.
std::vector<CriterionResult> geometry_suite(const config::RunConfig& rc);

// "PASS  7  exact-solution property: ... [12.3 s / 1200 s]"
std::string format_line(const CriterionResult& r);

// Columns: criterion, name, status, detail.  Wall times are left out so the
// file is reproducible.
void write_acceptance_csv(const std::string& path, const std::vector<CriterionResult>& results);

// The report-producing pipeline used by the determinism criterion: a full run
// and the separation experiment of the given config, written to `dir`.
void report_pipeline(const config::RunConfig& rc, const std::string& dir,
                     const std::function<void(const std::string&)>& log = {});

}  // namespace mhd::acceptance
