#include "mhd/reports.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "mhd/fields.hpp"
#include "mhd/norms.hpp"

namespace mhd::reports {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("reports: cannot write " + path);
  return os;
}

iteration::DiagnosticRow row(const std::string& q, double v, const std::string& horizon) {
  return {q, "none", v, horizon};
}

}  // namespace

std::string real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("reports: cannot create directory " + dir + ": " + ec.message());
}

void write_diagnostics_csv(const std::string& path, const std::vector<iteration::DiagnosticRow>& rows) {
  std::ofstream os = open_out(path);
  os << "quantity,j_range,value,partition_version,horizon\n";
  for (const auto& r : rows)
    os << r.quantity << ',' << r.j_range << ',' << real(r.value) << ',' << norms::kPartitionVersion << ','
       << r.horizon << '\n';
}

void write_residual_csv(const std::string& path, const std::vector<ResidualCsvRow>& rows) {
  std::ofstream os = open_out(path);
  os << "level,t,residual,tag\n";
  for (const auto& r : rows) os << r.level << ',' << real(r.t) << ',' << real(r.residual) << ',' << r.tag << '\n';
}

std::vector<ResidualCsvRow> residual_rows(const iteration::RunResult& r) {
  std::vector<ResidualCsvRow> out;
  for (const auto& c : r.checks)
    for (const auto& m : c.residuals) {
      out.push_back({c.level, m.t, m.velocity_rel, "mhd_velocity"});
      out.push_back({c.level, m.t, m.magnetic_rel, "mhd_magnetic"});
    }
  for (const auto& d : r.decomposition) out.push_back({d.level, d.t, d.residual, "decomposition_" + d.tag});
  return out;
}

std::vector<iteration::DiagnosticRow> check_rows(const iteration::RunResult& r) {
  std::vector<iteration::DiagnosticRow> out;
  const std::string h = "checks:0.." + real(r.plan.t_end);
  for (const auto& c : r.checks) {
    const std::string q = "level" + std::to_string(c.level) + "/";
    out.push_back(row(q + "mhd_residual_max", c.max_residual, h));
    out.push_back(row(q + "manufactured_error_floor", c.floor, h));
    out.push_back(row(q + "manufactured_residual", c.floor_residual, h));
    out.push_back(row(q + "residual_over_floor", c.floor > 0.0 ? c.max_residual / c.floor : INFINITY, h));
    out.push_back(row(q + "snapshot_divergence", c.max_divergence, h));
    out.push_back(row(q + "exact_solution_pass", c.passed ? 1.0 : 0.0, h));
  }
  out.push_back(row("initial/magnetic_shared", r.initial.magnetic_shared ? 1.0 : 0.0, "t=0"));
  out.push_back(row("initial/matched_pairs", double(r.initial.matched_pairs), "t=0"));
  out.push_back(row("initial/cascade_exact", r.initial.cascade_exact ? 1.0 : 0.0, "t=0"));
  out.push_back(row("initial/chain_defect", r.initial.chain_defect, "t=0"));
  return out;
}

std::vector<iteration::DiagnosticRow> separation_rows(const iteration::SeparationReport& s) {
  const std::string h = "t=" + real(s.t_star);
  return {row("separation/t_star", s.t_star, h),
          row("separation/difference_B-1inf1", s.difference, h),
          row("separation/M0_B-1inf1", s.m0, h),
          row("separation/perturbation_B-1inf1", s.perturbation, h),
          row("separation/contamination_B-1inf1", s.contamination, h),
          row("separation/ratio", s.ratio, h),
          row("separation/scale_ratio", s.scale_ratio, h),
          row("separation/regime_ok", s.regime_ok ? 1.0 : 0.0, h),
          row("separation/ablation_difference", s.ablation_difference, h),
          row("separation/ablation_ratio", s.ablation_ratio, h),
          row("separation/collapse", s.collapse, h),
          row("separation/identical_difference", s.identical_difference, h)};
}

void write_schedule_json(const std::string& path, const ParameterSchedule& s) {
  std::ofstream os = open_out(path);
  os << schedule_to_json(s).dump(2) << '\n';
}

std::string schedule_hash(const ParameterSchedule& s) {
  const std::string text = schedule_to_json(s).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_manifest(const std::string& path, const config::RunConfig& rc, const ManifestInfo& info) {
  nlohmann::ordered_json m;
  m["command"] = info.command;
  m["config"] = rc.document;
  m["schedule_hash"] = schedule_hash(rc.schedule);
  m["wall_seconds"] = info.wall_seconds;
  m["step_count"] = info.steps;
  m["partition_version"] = norms::kPartitionVersion;
  for (auto it = info.extra.begin(); it != info.extra.end(); ++it) m[it.key()] = it.value();
  std::ofstream os = open_out(path);
  os << m.dump(2) << '\n';
}

void write_run(const std::string& dir, const config::RunConfig& rc, const iteration::RunResult& r,
               const std::string& command) {
  ensure_directory(dir);
  ensure_directory(dir + "/fields");
  write_schedule_json(dir + "/schedule.json", rc.schedule);
  std::vector<iteration::DiagnosticRow> diag = check_rows(r);
  diag.insert(diag.end(), r.diagnostics.begin(), r.diagnostics.end());
  write_diagnostics_csv(dir + "/diagnostics.csv", diag);
  write_residual_csv(dir + "/residuals.csv", residual_rows(r));

  const iteration::Construction& c = *r.construction;
  const double t_star = 1.0 / (rc.schedule.lambda(1) * rc.schedule.lambda(1));
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const iteration::BranchRun* b : {static_cast<const iteration::BranchRun*>(&r.odd), static_cast<const iteration::BranchRun*>(r.even.get())}) {
    if (!b) continue;
    const int n = b->levels.back();
    const residual::AssembledState s = iteration::assembled(c, *b, n, t_star);
    const std::string stem_u = dir + "/fields/u_level" + std::to_string(n);
    const std::string stem_b = dir + "/fields/B_level" + std::to_string(n);
    fields::write_field(stem_u, c.grid(), {&s.u[0], &s.u[1]}, {"x1", "x2"}, t_star,
                        "velocity u_" + std::to_string(n));
    fields::write_field(stem_b, c.grid(), {&s.B[0], &s.B[1]}, {"x1", "x2"}, t_star,
                        "magnetic field B_" + std::to_string(n));
    files.push_back("fields/u_level" + std::to_string(n));
    files.push_back("fields/B_level" + std::to_string(n));
  }
  ManifestInfo info;
  info.command = command;
  info.wall_seconds = r.wall_seconds;
  info.steps = r.steps;
  info.extra["levels"] = c.level_count();
  info.extra["fields"] = files;
  write_manifest(dir + "/manifest.json", rc, info);
}

}  // namespace mhd::reports
