// mhdni: command-line front end of the construction.
//
// Exit codes: 0 when every hard invariant of the command holds, 1 for
// configuration or validation errors and failed invariants, 2 for usage
// errors such as an unknown subcommand.
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mhd/acceptance.hpp"
#include "mhd/config.hpp"
#include "mhd/fields.hpp"
#include "mhd/iteration.hpp"
#include "mhd/norms.hpp"
#include "mhd/reports.hpp"

namespace {

using namespace mhd;

struct Globals {
  std::string config_path;
  std::string out_dir = "mhdni_out";
  int grid = 0;
  int levels = 0;
  bool quiet = false;
};

config::RunConfig load_config(const Globals& g) {
  config::Overrides ov;
  ov.grid = g.grid;
  ov.levels = g.levels;
  return g.config_path.empty() ? config::from_json(config::default_document(), ov) : config::load(g.config_path, ov);
}

iteration::Log logger(const Globals& g) {
  if (g.quiet) return {};
  return [](const std::string& m) { std::cerr << "[mhdni] " << m << std::endl; };
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int verify_geometry(const Globals& g) {
  const config::RunConfig rc = load_config(g);
  const auto results = acceptance::geometry_suite(rc);
  reports::ensure_directory(g.out_dir);
  acceptance::write_acceptance_csv(g.out_dir + "/geometry.csv", results);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << acceptance::format_line(r) << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

int build_level(const Globals& g, int n) {
  config::RunConfig rc = load_config(g);
  const auto t0 = std::chrono::steady_clock::now();
  const iteration::Construction c(rc.grid, rc.schedule, n);
  const std::string dir = g.out_dir + "/level" + std::to_string(n);
  reports::ensure_directory(dir);
  reports::write_schedule_json(dir + "/schedule.json", rc.schedule);

  std::vector<iteration::DiagnosticRow> rows;
  const iteration::LevelFlows& lf = c.level(n);
  rows.push_back({"level" + std::to_string(n) + "/C0", "none", lf.c0, "static"});
  rows.push_back({"level" + std::to_string(n) + "/max_amplitude_argument", "none", lf.max_argument, "static"});
  bool ok = std::isfinite(lf.c0) && std::isfinite(lf.max_argument);
  if (n >= 2) {
    const double ln = rc.schedule.lambda(n);
    const auto res = errors::verify_decomposition(c.context(n), {0.0, 1.0 / (ln * ln)},
                                                  {errors::Ablation::None});
    for (const auto& r : res) {
      rows.push_back({"level" + std::to_string(n) + "/decomposition_residual", "none", r.residual,
                      "t=" + reports::real(r.t)});
      ok = ok && r.residual <= rc.thresholds.decomposition;
    }
  }
  const auto areas = iteration::support_areas(c);
  rows.insert(rows.end(), areas.begin(), areas.end());
  reports::write_diagnostics_csv(dir + "/diagnostics.csv", rows);

  const VectorField wh = lf.wh->w(0.0);
  fields::write_field(dir + "/wh_level" + std::to_string(n), c.grid(), {&wh[0], &wh[1]}, {"x1", "x2"}, 0.0,
                      "heat flow w^(h)_" + std::to_string(n));
  nlohmann::ordered_json files = nlohmann::ordered_json::array({"wh_level" + std::to_string(n)});
  if (!lf.wi.empty()) {
    const VectorField wi = lf.wi.w(0.0);
    fields::write_field(dir + "/wi_level" + std::to_string(n), c.grid(), {&wi[0], &wi[1]}, {"x1", "x2"}, 0.0,
                        "inverse-cascade flow w^(i)_" + std::to_string(n));
    files.push_back("wi_level" + std::to_string(n));
  }
  reports::ManifestInfo info;
  info.command = "build-level";
  info.wall_seconds = seconds_since(t0);
  info.extra["level"] = n;
  info.extra["fields"] = files;
  reports::write_manifest(dir + "/manifest.json", rc, info);
  for (const auto& r : rows) std::cout << r.quantity << ' ' << reports::real(r.value) << '\n';
  return ok ? 0 : 1;
}

int run(const Globals& g, int levels) {
  config::RunConfig rc = load_config(g);
  const int k = levels > 0 ? levels : rc.levels;
  const iteration::RunResult r = iteration::run_iteration(rc, k, logger(g));
  reports::write_run(g.out_dir, rc, r, "run");
  bool ok = r.initial.magnetic_shared && r.initial.cascade_exact;
  for (const auto& c : r.checks) {
    std::cout << "level " << c.level << ": residual " << reports::real(c.max_residual) << ", floor "
              << reports::real(c.floor) << ", divergence " << reports::real(c.max_divergence)
              << (c.passed ? "  pass" : "  FAIL") << '\n';
    ok = ok && c.passed && c.max_divergence <= rc.thresholds.divergence;
  }
  for (const auto& d : r.decomposition)
    if (d.tag == "full") ok = ok && d.residual <= rc.thresholds.decomposition;
  std::cout << "steps " << r.steps << ", reports in " << g.out_dir << '\n';
  return ok ? 0 : 1;
}

// Splits one CSV line; the report files never quote their fields.
std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

int diagnose(const Globals& g, const std::string& report) {
  const config::RunConfig rc = load_config(g);
  std::ifstream in(report + "/diagnostics.csv");
  if (!in) throw std::invalid_argument("diagnose: no diagnostics.csv under " + report);
  std::string line;
  std::getline(in, line);
  if (line != "quantity,j_range,value,partition_version,horizon")
    throw std::invalid_argument("diagnose: unexpected diagnostics header in " + report);
  bool ok = true;
  int rows = 0;
  std::vector<iteration::DiagnosticRow> out;
  auto flag = [&](const std::string& q, bool good) {
    out.push_back({"diagnose/" + q, "none", good ? 1.0 : 0.0, "report"});
    std::cout << (good ? "ok    " : "FAIL  ") << q << '\n';
    ok = ok && good;
  };
  while (std::getline(in, line)) {
    const auto cells = split(line);
    if (cells.size() != 5) throw std::invalid_argument("diagnose: malformed row '" + line + "'");
    ++rows;
    const std::string& q = cells[0];
    const double v = std::stod(cells[2]);
    auto ends_with = [&](const std::string& s) { return q.size() >= s.size() && q.compare(q.size() - s.size(), s.size(), s) == 0; };
    if (ends_with("exact_solution_pass") || q == "initial/magnetic_shared" || q == "initial/cascade_exact")
      flag(q, v == 1.0);
    if (ends_with("snapshot_divergence")) flag(q, v <= rc.thresholds.divergence);
  }
  std::ifstream res(report + "/residuals.csv");
  if (!res) throw std::invalid_argument("diagnose: no residuals.csv under " + report);
  std::getline(res, line);
  while (std::getline(res, line)) {
    const auto cells = split(line);
    if (cells.size() == 4 && cells[3] == "decomposition_full")
      flag("decomposition_level" + cells[0] + "_t" + cells[1], std::stod(cells[2]) <= rc.thresholds.decomposition);
  }
  // Field files: readable, two components on a valid grid, finite samples.
  std::ifstream mf(report + "/manifest.json");
  if (!mf) throw std::invalid_argument("diagnose: no manifest.json under " + report);
  const auto manifest = nlohmann::json::parse(mf);
  if (manifest.contains("fields"))
    for (const auto& stem : manifest["fields"]) {
      Grid fg;
      const std::vector<Field> comp = fields::read_field(report + "/" + stem.get<std::string>(), &fg);
      bool good = comp.size() == 2;
      for (const Field& f : comp) good = good && f.rows() == fg.N && f.cols() == fg.N && f.allFinite();
      flag(stem.get<std::string>() + "_readable", good);
    }
  reports::ensure_directory(g.out_dir);
  reports::write_diagnostics_csv(g.out_dir + "/diagnose.csv", out);
  std::cout << rows << " diagnostic rows read from " << report << '\n';
  return ok ? 0 : 1;
}

int separation(const Globals& g) {
  const config::RunConfig rc = load_config(g);
  const auto t0 = std::chrono::steady_clock::now();
  const iteration::SeparationReport s = iteration::separation_experiment(rc);
  reports::ensure_directory(g.out_dir);
  reports::write_diagnostics_csv(g.out_dir + "/separation.csv", reports::separation_rows(s));
  reports::ManifestInfo info;
  info.command = "separation";
  info.wall_seconds = seconds_since(t0);
  reports::write_manifest(g.out_dir + "/manifest.json", rc, info);
  std::cout << "ratio " << reports::real(s.ratio) << " (difference " << reports::real(s.difference) << ", M0 "
            << reports::real(s.m0) << ")\n"
            << s.regime_note << '\n'
            << "epsilon_0 = 0 collapse " << reports::real(s.collapse) << ", identical-branch control "
            << reports::real(s.identical_difference) << '\n';
  const bool ok = s.identical_difference == 0.0 && s.collapse >= rc.thresholds.separation_collapse &&
                  (!s.regime_ok || s.ratio >= rc.thresholds.separation_ratio);
  return ok ? 0 : 1;
}

int selftest(const Globals& g) {
  const config::RunConfig rc = load_config(g);
  acceptance::SuiteOptions opt;
  opt.out_dir = g.out_dir;
  opt.log = logger(g);
  opt.on_result = [](const acceptance::CriterionResult& r) { std::cout << acceptance::format_line(r) << std::endl; };
  const auto results = acceptance::run_suite(rc, opt);
  acceptance::write_acceptance_csv(g.out_dir + "/acceptance.csv", results);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed;
  return ok ? 0 : 1;
}

// First positional token that is neither an option value nor a subcommand.
std::string unknown_subcommand(const CLI::App& app, int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--", 0) == 0) {
      const bool takes_value = a == "--config" || a == "--out" || a == "--grid" || a == "--levels";
      if (takes_value) ++i;
      continue;
    }
    for (const CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
      if (sub->get_name() == a) return {};
    return a;
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mhdni: non-unique weak solutions of 2D MHD, built and checked on a periodic grid"};
  Globals g;
  app.add_option("--config", g.config_path, "JSON run configuration (default: built-in)");
  app.add_option("--out", g.out_dir, "Output directory");
  app.add_option("--grid", g.grid, "Override the grid size N");
  app.add_option("--levels", g.levels, "Override the number of levels");
  app.add_flag("--quiet", g.quiet, "Suppress progress messages");
  app.require_subcommand(1);

  auto* geo = app.add_subcommand("verify-geometry", "Geometric decomposition, Mikado algebra, operator identities");
  int build_n = 1;
  auto* build = app.add_subcommand("build-level", "Build the explicit flows of one level without solving");
  build->add_option("--n", build_n, "Level index")->required()->check(CLI::PositiveNumber);
  int run_levels = 0;
  auto* runc = app.add_subcommand("run", "Solve both branches and write the run reports");
  runc->add_option("--levels", run_levels, "Number of levels")->check(CLI::PositiveNumber);
  std::string report;
  auto* diag = app.add_subcommand("diagnose", "Check the invariants recorded in a run directory");
  diag->add_option("--report", report, "Run directory")->required();
  auto* sep = app.add_subcommand("separation", "Branch separation experiment with one level per branch");
  auto* self = app.add_subcommand("selftest", "Run the full acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    // Name an unrecognized subcommand explicitly; CLI11 only reports the
    // missing required subcommand.
    const std::string unknown = unknown_subcommand(app, argc, argv);
    if (!unknown.empty())
      std::cerr << "mhdni: unknown subcommand '" << unknown << "'\n";
    else
      app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (*geo) return verify_geometry(g);
    if (*build) return build_level(g, build_n);
    if (*runc) return run(g, run_levels);
    if (*diag) return diagnose(g, report);
    if (*sep) return separation(g);
    if (*self) return selftest(g);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
