#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "mhd/config.hpp"

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MHDNI_BINARY) + " --quiet " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string write_config(const std::string& name, const nlohmann::json& doc) {
  const std::string path = temp_path(name);
  std::ofstream(path) << doc.dump(2);
  return path;
}

}  // namespace

TEST_CASE("unknown or missing subcommands are usage errors") {
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("build-level") == 2);  // --n is required
  CHECK(std::system((std::string(MHDNI_BINARY) + " --help > /dev/null").c_str()) == 0);
}

TEST_CASE("invalid configurations exit with a validation error") {
  nlohmann::json doc = mhd::config::smoke_document();
  doc["schedule"]["lambda"] = {12, 30};
  CHECK(run_cli("--config " + write_config("mhd_bad_lambda.json", doc) + " verify-geometry") == 1);
  CHECK(run_cli("--config " + temp_path("mhd_missing_config.json") + " verify-geometry") == 1);
  std::ofstream(temp_path("mhd_not_json.json")) << "{ not json";
  CHECK(run_cli("--config " + temp_path("mhd_not_json.json") + " verify-geometry") == 1);
  CHECK(run_cli("--grid 48 verify-geometry") == 1);
}

TEST_CASE("verify-geometry passes and writes its table") {
  const std::string out = temp_path("mhd_cli_geometry");
  CHECK(run_cli("--out " + out + " verify-geometry") == 0);
  CHECK(std::filesystem::exists(out + "/geometry.csv"));
}

TEST_CASE("build-level writes diagnostics, fields and a manifest") {
  const std::string cfg = write_config("mhd_smoke.json", mhd::config::smoke_document());
  const std::string out = temp_path("mhd_cli_build");
  CHECK(run_cli("--config " + cfg + " --out " + out + " build-level --n 2") == 0);
  CHECK(std::filesystem::exists(out + "/level2/diagnostics.csv"));
  CHECK(std::filesystem::exists(out + "/level2/wh_level2.json"));
  CHECK(std::filesystem::exists(out + "/level2/manifest.json"));
  CHECK(run_cli("--config " + cfg + " --out " + out + " build-level --n 7") == 1);
}

TEST_CASE("run and diagnose round trip on the smoke configuration") {
  const std::string cfg = write_config("mhd_smoke.json", mhd::config::smoke_document());
  const std::string out = temp_path("mhd_cli_run");
  std::filesystem::remove_all(out);
  CHECK(run_cli("--config " + cfg + " --out " + out + " run --levels 2") == 0);
  CHECK(std::filesystem::exists(out + "/residuals.csv"));
  CHECK(std::filesystem::exists(out + "/manifest.json"));
  CHECK(run_cli("--config " + cfg + " --out " + out + "/diag diagnose --report " + out) == 0);
  CHECK(run_cli("--config " + cfg + " diagnose --report " + temp_path("mhd_no_such_run")) == 1);
}
