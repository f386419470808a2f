#pragma once
// Report emission: diagnostic and residual CSV tables, schedule and manifest
// JSON, and field files of a run directory.  Reals in CSV are printed with
// %.17g so the files are byte-identical for identical inputs.

#include <string>
#include <vector>

#include "json.hpp"
#include "mhd/config.hpp"
#include "mhd/iteration.hpp"

namespace mhd::reports {

// %.17g, with "inf", "-inf" and "nan" for non-finite values.
std::string real(double x);

struct ResidualCsvRow {
  int level = 0;
  double t = 0.0;
  double residual = 0.0;
  std::string tag;
};

// Columns: quantity, j_range, value, partition_version, horizon.
void write_diagnostics_csv(const std::string& path, const std::vector<iteration::DiagnosticRow>& rows);
// Columns: level, t, residual, tag.
void write_residual_csv(const std::string& path, const std::vector<ResidualCsvRow>& rows);

// Level checks, decomposition identities and initial-data checks of a run.
std::vector<ResidualCsvRow> residual_rows(const iteration::RunResult& r);
std::vector<iteration::DiagnosticRow> check_rows(const iteration::RunResult& r);
std::vector<iteration::DiagnosticRow> separation_rows(const iteration::SeparationReport& s);

// Exact integers, reals as decimal strings.
void write_schedule_json(const std::string& path, const ParameterSchedule& s);
// FNV-1a 64-bit hash of the compact schedule JSON, as 16 hex digits.
std::string schedule_hash(const ParameterSchedule& s);

struct ManifestInfo {
  std::string command;
  double wall_seconds = 0.0;
  long steps = 0;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};
void write_manifest(const std::string& path, const config::RunConfig& rc, const ManifestInfo& info);

// Writes schedule.json, diagnostics.csv, residuals.csv, manifest.json and the
// assembled (u_n, B_n) of the top level of each branch at t = lambda_1^{-2}
// under fields/.
void write_run(const std::string& dir, const config::RunConfig& rc, const iteration::RunResult& r,
               const std::string& command);

// Creates the directory (and parents); throws with a "reports: " prefix.
void ensure_directory(const std::string& dir);

}  // namespace mhd::reports
