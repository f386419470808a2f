// Acceptance binary: prints one PASS/FAIL line per criterion and exits 0 only
// when all twelve pass.
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mhd/acceptance.hpp"
#include "mhd/config.hpp"
#include "mhd/reports.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite of the MHD non-uniqueness construction"};
  std::string config_path, out_dir = "acceptance_out";
  bool quiet = false;
  app.add_option("--config", config_path, "JSON run configuration (default: built-in)");
  app.add_option("--out", out_dir, "Directory for the reports");
  app.add_flag("--quiet", quiet, "Suppress progress messages");
  CLI11_PARSE(app, argc, argv);

  mhd::config::RunConfig rc;
  try {
    rc = config_path.empty() ? mhd::config::from_json(mhd::config::default_document())
                             : mhd::config::load(config_path);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }

  mhd::acceptance::SuiteOptions opt;
  opt.out_dir = out_dir;
  if (!quiet) opt.log = [](const std::string& m) { std::cerr << "[acceptance] " << m << std::endl; };
  opt.on_result = [](const mhd::acceptance::CriterionResult& r) {
    std::cerr << mhd::acceptance::format_line(r) << std::endl;
  };
  std::vector<mhd::acceptance::CriterionResult> results;
  try {
    results = mhd::acceptance::run_suite(rc, opt);
    mhd::acceptance::write_acceptance_csv(out_dir + "/acceptance.csv", results);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }

  int passed = 0;
  std::cout << "acceptance summary\n";
  for (const auto& r : results) {
    std::cout << mhd::acceptance::format_line(r) << '\n';
    passed += r.passed ? 1 : 0;
  }
  std::cout << passed << " of " << results.size() << " criteria passed\n";
  return passed == int(results.size()) ? 0 : 1;
}
