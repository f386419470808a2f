#include "mhd/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mhd::config {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument("config: " + what); }

void require_object(const json& doc, const std::string& key) {
  if (!doc.contains(key)) fail("missing section '" + key + "'");
  if (!doc.at(key).is_object()) fail("section '" + key + "' must be an object");
}

double positive(const json& sec, const std::string& key, double fallback) {
  const double v = sec.value(key, fallback);
  if (!(v > 0.0)) fail("'" + key + "' must be positive");
  return v;
}

void check_keys(const json& sec, const std::string& name, const std::vector<std::string>& allowed) {
  for (auto it = sec.begin(); it != sec.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      fail("unknown key '" + it.key() + "' in section '" + name + "'");
  }
}

}  // namespace

solver::SolverConfig solver_from_json(const json& sec) {
  check_keys(sec, "solver",
             {"integrator", "cfl", "rate_factor", "dt_fixed", "dt_max", "blowup_factor", "elsasser", "max_steps",
              "window_fraction"});
  solver::SolverConfig c;
  const std::string integ = sec.value("integrator", std::string("etd3"));
  if (integ == "etd3") {
    c.integrator = solver::Integrator::Etd3;
  } else if (integ == "ifrk3") {
    c.integrator = solver::Integrator::IfRk3;
  } else {
    fail("solver.integrator must be \"etd3\" or \"ifrk3\"");
  }
  c.cfl = positive(sec, "cfl", c.cfl);
  c.rate_factor = positive(sec, "rate_factor", c.rate_factor);
  c.dt_fixed = sec.value("dt_fixed", 0.0);
  if (c.dt_fixed < 0.0) fail("solver.dt_fixed must be nonnegative");
  c.dt_max = positive(sec, "dt_max", c.dt_max);
  c.blowup_factor = positive(sec, "blowup_factor", c.blowup_factor);
  c.elsasser = sec.value("elsasser", false);
  c.max_steps = sec.value("max_steps", c.max_steps);
  if (c.max_steps <= 0) fail("solver.max_steps must be positive");
  c.window_fraction = sec.value("window_fraction", c.window_fraction);
  if (c.window_fraction < 0.0) fail("solver.window_fraction must be nonnegative");
  return c;
}

RunConfig from_json(const json& input, const Overrides& ov) {
  json doc = input;
  if (!doc.is_object()) fail("document must be a JSON object");
  check_keys(doc, "<root>",
             {"schedule", "grid", "solver", "seed", "thresholds", "run", "separation", "decomposition",
              "manufactured", "smoke_config"});
  for (const char* key : {"schedule", "grid", "solver", "seed", "thresholds"}) require_object(doc, key);
  if (ov.grid > 0) doc["grid"]["N"] = ov.grid;
  if (ov.levels > 0) doc["run"]["levels"] = ov.levels;

  RunConfig rc;
  check_keys(doc.at("grid"), "grid", {"N", "dealias"});
  if (!doc.at("grid").contains("N") || !doc.at("grid").at("N").is_number_integer())
    fail("grid.N must be an integer");
  try {
    rc.grid = Grid(doc.at("grid").at("N").get<int>(), doc.at("grid").value("dealias", 2.0 / 3.0));
  } catch (const std::invalid_argument& e) {
    fail(std::string("grid: ") + e.what());
  }
  rc.schedule = make_schedule(doc.at("schedule"), rc.grid);

  rc.solver = solver_from_json(doc.at("solver"));
  double ell_min = rc.schedule.levels.front().ell;
  for (const auto& l : rc.schedule.levels) ell_min = std::min(ell_min, l.ell);
  rc.solver.ell_min = ell_min;

  const json& seed = doc.at("seed");
  check_keys(seed, "seed", {"rng", "magnetic_width", "magnetic_amplitude"});
  rc.rng_seed = seed.value("rng", rc.rng_seed);
  rc.seed.width = positive(seed, "magnetic_width", rc.seed.width);
  rc.seed.amplitude = seed.value("magnetic_amplitude", rc.seed.amplitude);
  if (rc.seed.amplitude < 0.0) fail("seed.magnetic_amplitude must be nonnegative");

  const json& th = doc.at("thresholds");
  check_keys(th, "thresholds",
             {"decomposition", "ablation_gain", "residual_factor", "divergence", "separation_ratio",
              "separation_collapse", "perturbation_fraction", "scale_ratio"});
  Thresholds& t = rc.thresholds;
  t.decomposition = positive(th, "decomposition", t.decomposition);
  t.ablation_gain = positive(th, "ablation_gain", t.ablation_gain);
  t.residual_factor = positive(th, "residual_factor", t.residual_factor);
  t.divergence = positive(th, "divergence", t.divergence);
  t.separation_ratio = positive(th, "separation_ratio", t.separation_ratio);
  t.separation_collapse = positive(th, "separation_collapse", t.separation_collapse);
  t.perturbation_fraction = positive(th, "perturbation_fraction", t.perturbation_fraction);
  t.scale_ratio = positive(th, "scale_ratio", t.scale_ratio);

  const json run = doc.value("run", json::object());
  rc.levels = run.value("levels", rc.schedule.level_count());
  if (rc.levels < 1 || rc.levels > rc.schedule.level_count())
    fail("run.levels = " + std::to_string(rc.levels) + " must lie in [1, " +
         std::to_string(rc.schedule.level_count()) + "] (the schedule's level count)");

  const json mms = doc.value("manufactured", json::object());
  rc.mms_amplitude = positive(mms, "amplitude", rc.mms_amplitude);
  rc.mms_wavenumber = mms.value("wavenumber", rc.mms_wavenumber);
  if (rc.mms_wavenumber < 1 || 6.0 * rc.mms_wavenumber > rc.grid.kcut())
    fail("manufactured.wavenumber must be positive with its quadratic products inside the dealiased band");

  const json sep = doc.value("separation", json::object());
  rc.separation.grid = sep.value("grid", rc.grid.N);
  rc.separation.schedule = sep.contains("schedule") ? sep.at("schedule") : doc.at("schedule");
  const json dec = doc.value("decomposition", json::object());
  rc.decomposition.grid = dec.value("grid", rc.grid.N);
  rc.decomposition.schedule = dec.contains("schedule") ? dec.at("schedule") : doc.at("schedule");
  rc.smoke_config = doc.value("smoke_config", std::string());

  rc.document = doc;
  return rc;
}

RunConfig load(const std::string& path, const Overrides& ov) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    fail("'" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(doc, ov);
}

json default_document() {
  return json::parse(R"({
  "schedule": {"lambda": [20, 80, 150], "rho": [5, 10, 15], "p": 4, "epsilon0": 1e-30, "c0": "auto"},
  "grid": {"N": 1024},
  "solver": {"integrator": "etd3", "cfl": 0.35, "rate_factor": 0.5, "dt_max": 0.01, "window_fraction": 0.025,
             "blowup_factor": 1000},
  "seed": {"rng": 20240601, "magnetic_width": 0.25, "magnetic_amplitude": 1.0},
  "thresholds": {"decomposition": 1e-8, "ablation_gain": 1e5, "residual_factor": 10, "divergence": 1e-12,
                 "separation_ratio": 0.25, "separation_collapse": 10, "perturbation_fraction": 0.01,
                 "scale_ratio": 4},
  "run": {"levels": 3},
  "separation": {"grid": 512, "schedule": {"lambda": [20, 80], "rho": [5, 5], "p": 4, "epsilon0": 1e-6,
                                           "c0": "auto"}},
  "decomposition": {"grid": 1024, "schedule": {"lambda": [20, 80], "rho": [5, 10], "p": 4, "epsilon0": 1e-30,
                                               "c0": "auto"}}
})");
}

json smoke_document() {
  return json::parse(R"({
  "schedule": {"lambda": [10, 30], "rho": [5, 5], "p": 4, "epsilon0": 1e-12, "c0": "auto"},
  "grid": {"N": 256},
  "solver": {"integrator": "etd3", "cfl": 0.35, "rate_factor": 0.5, "dt_max": 0.01, "window_fraction": 0.025,
             "blowup_factor": 1000},
  "seed": {"rng": 20240601, "magnetic_width": 0.25, "magnetic_amplitude": 1.0},
  "thresholds": {"decomposition": 1e-8, "ablation_gain": 1e5, "residual_factor": 10, "divergence": 1e-12,
                 "separation_ratio": 0.25, "separation_collapse": 10, "perturbation_fraction": 0.01,
                 "scale_ratio": 4},
  "run": {"levels": 2},
  "separation": {"grid": 256, "schedule": {"lambda": [5, 20], "rho": [5, 5], "p": 4, "epsilon0": 1e-10,
                                           "c0": "auto"}},
  "decomposition": {"grid": 256, "schedule": {"lambda": [10, 30], "rho": [5, 5], "p": 4, "epsilon0": 1e-12,
                                              "c0": "auto"}}
})");
}

}  // namespace mhd::config
