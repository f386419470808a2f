#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "doctest.h"
#include "mhd/config.hpp"
#include "mhd/iteration.hpp"
#include "mhd/norms.hpp"
#include "mhd/reports.hpp"

using namespace mhd;

namespace {

const iteration::RunResult& smoke_run() {
  static const config::RunConfig rc = config::from_json(config::smoke_document());
  static const iteration::RunResult r = iteration::run_iteration(rc, rc.levels);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("branch levels alternate by parity") {
  CHECK(iteration::branch_levels(iteration::Parity::Odd, 5) == std::vector<int>{1, 3, 5});
  CHECK(iteration::branch_levels(iteration::Parity::Even, 5) == std::vector<int>{2, 4});
}

TEST_CASE("the smoke run assembles exact solutions at every level") {
  const auto& r = smoke_run();
  REQUIRE(r.checks.size() == 2);
  for (const auto& c : r.checks) {
    CHECK(c.passed);
    CHECK(c.max_residual <= 10.0 * c.floor);
    CHECK(c.max_divergence <= 1e-12);
  }
  for (const auto& d : r.decomposition)
    if (d.tag == "full") CHECK(d.residual <= 1e-8);
  CHECK(r.steps > 0);
}

TEST_CASE("both branches share the magnetic data and the cascade starts exactly") {
  const auto& r = smoke_run();
  CHECK(r.initial.magnetic_shared);
  CHECK(r.initial.matched_pairs >= 1);
  CHECK(r.initial.cascade_exact);
}

TEST_CASE("Besov proxies of a single mode") {
  const Grid g(64);
  const Field f = fields::sample(g, [](double x1, double) { return std::cos(8 * x1); });
  const VectorField v = {f, g.zeros()};
  // Oracle: sum_j 2^{js} psi_j(8), the band of block j being psi_j(8) cos(8 x1).
  double m1 = 0.0, m2 = 0.0;
  for (int j = 0; j <= 6; ++j) {
    m1 += std::pow(2.0, -j) * norms::block_symbol(j, 8.0);
    m2 += std::pow(2.0, -2 * j) * norms::block_symbol(j, 8.0);
  }
  CHECK(iteration::besov_minus1(g, v) == doctest::Approx(m1).epsilon(1e-12));
  CHECK(iteration::besov_minus2(g, v) == doctest::Approx(m2).epsilon(1e-12));
}

TEST_CASE("reports are byte-identical when written twice") {
  const config::RunConfig rc = config::from_json(config::smoke_document());
  const auto& r = smoke_run();
  const auto base = std::filesystem::temp_directory_path() / "mhd_reports_twice";
  std::filesystem::remove_all(base);
  reports::write_run((base / "a").string(), rc, r, "test");
  reports::write_run((base / "b").string(), rc, r, "test");
  for (const char* f : {"diagnostics.csv", "residuals.csv", "schedule.json"}) {
    const std::string a = slurp((base / "a" / f).string()), b = slurp((base / "b" / f).string());
    CHECK(!a.empty());
    CHECK(a == b);
  }
  const std::string diag = slurp((base / "a" / "diagnostics.csv").string());
  CHECK(diag.rfind("quantity,j_range,value,partition_version,horizon\n", 0) == 0);
  const std::string res = slurp((base / "a" / "residuals.csv").string());
  CHECK(res.rfind("level,t,residual,tag\n", 0) == 0);
  // Every row of the tidy tables has the header's column count.
  std::istringstream in(diag);
  std::string line;
  while (std::getline(in, line)) CHECK(std::count(line.begin(), line.end(), ',') == 4);
  const auto manifest = nlohmann::json::parse(slurp((base / "a" / "manifest.json").string()));
  CHECK(manifest.at("step_count").get<long>() == r.steps);
  CHECK(manifest.at("schedule_hash").get<std::string>().size() == 16);
  Grid fg;
  const auto u = fields::read_field((base / "a" / "fields" / "u_level1").string(), &fg);
  CHECK(fg.N == rc.grid.N);
}

TEST_CASE("report reals use 17 significant digits and name non-finite values") {
  CHECK(reports::real(0.1) == "0.10000000000000001");
  CHECK(std::stod(reports::real(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(reports::real(INFINITY) == "inf");
  CHECK(reports::real(NAN) == "nan");
  const config::RunConfig rc = config::from_json(config::smoke_document());
  CHECK(reports::schedule_hash(rc.schedule) == reports::schedule_hash(rc.schedule));
  const config::RunConfig other = config::from_json(config::default_document());
  CHECK(reports::schedule_hash(rc.schedule) != reports::schedule_hash(other.schedule));
}
