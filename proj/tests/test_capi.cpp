#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "sle_c_api.h"

namespace fs = std::filesystem;

namespace {
const char* kSmallRun =
    R"({"h": 0.0625, "dt": 0.01, "T": 0.05,
        "x_grid": {"M": 64}, "phase_grid": {"J": 24, "K": 24}})";

sle_run_options defaults() {
  sle_run_options o;
  sle_run_options_init(&o);
  return o;
}
}  // namespace

TEST_CASE("default options are benign") {
  sle_run_options o = defaults();
  CHECK(o.threads == 1);
  CHECK(o.strict_cfl == 0);
  CHECK(o.paper_exact == 0);
}

TEST_CASE("parse, inspect and free a run config") {
  sle_run_options o = defaults();
  sle_config* cfg = nullptr;
  REQUIRE(sle_config_parse(kSmallRun, &o, &cfg) == SLE_OK);
  REQUIRE(cfg != nullptr);
  CHECK(sle_config_is_experiment(cfg) == 0);
  const char* resolved = sle_config_resolved_json(cfg);
  REQUIRE(resolved != nullptr);
  std::string r(resolved);
  CHECK(r.find("\"h\"") != std::string::npos);
  CHECK(r.find("\"derived\"") != std::string::npos);
  sle_config_free(cfg);
}

TEST_CASE("bad JSON reports a parse failure with a message") {
  sle_run_options o = defaults();
  sle_config* cfg = nullptr;
  CHECK(sle_config_parse("{ nope", &o, &cfg) == SLE_ERR_PARSE);
  CHECK(cfg == nullptr);
  CHECK(std::strlen(sle_last_error()) > 0);
}

TEST_CASE("schema violations map to the invalid status") {
  sle_run_options o = defaults();
  sle_config* cfg = nullptr;
  CHECK(sle_config_parse(R"({"dt": 0.01, "T": 0.5})", &o, &cfg) ==
        SLE_ERR_INVALID);
  CHECK(std::string(sle_last_error()).find("\"h\"") != std::string::npos);
}

TEST_CASE("missing config file reports io") {
  sle_run_options o = defaults();
  sle_config* cfg = nullptr;
  CHECK(sle_config_load("/nonexistent/missing.json", &o, &cfg) == SLE_ERR_IO);
}

TEST_CASE("null arguments are rejected, not dereferenced") {
  sle_run_options o = defaults();
  sle_config* cfg = nullptr;
  CHECK(sle_config_parse(nullptr, &o, &cfg) == SLE_ERR_INVALID);
  CHECK(sle_config_parse(kSmallRun, &o, nullptr) == SLE_ERR_INVALID);
  CHECK(std::string(sle_config_resolved_json(nullptr)).empty());
  CHECK(sle_run(nullptr, "out", &o) == SLE_ERR_INVALID);
  sle_observables obs;
  CHECK(sle_solver_observe(nullptr, &obs) == SLE_ERR_INVALID);
}

TEST_CASE("stepping a solver conserves the masses") {
  sle_run_options o = defaults();
  sle_config* cfg = nullptr;
  REQUIRE(sle_config_parse(kSmallRun, &o, &cfg) == SLE_OK);
  sle_solver* s = nullptr;
  REQUIRE(sle_solver_create(cfg, &o, &s) == SLE_OK);
  REQUIRE(s != nullptr);

  sle_observables at0;
  REQUIRE(sle_solver_observe(s, &at0) == SLE_OK);
  CHECK(at0.t == 0.0);
  CHECK(at0.mass_psi == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(at0.mass_mu == doctest::Approx(1.0).epsilon(1e-10));

  REQUIRE(sle_solver_advance(s, 5) == SLE_OK);
  CHECK(sle_solver_time(s) == doctest::Approx(0.05).epsilon(1e-12));
  sle_observables at5;
  REQUIRE(sle_solver_observe(s, &at5) == SLE_OK);
  CHECK(at5.mass_psi == doctest::Approx(at0.mass_psi).epsilon(1e-12));
  CHECK(at5.mass_mu == doctest::Approx(at0.mass_mu).epsilon(1e-12));
  CHECK(std::isfinite(at5.energy));
  CHECK(std::isfinite(at5.hgrad_norm));

  sle_solver_free(s);
  sle_config_free(cfg);
}

TEST_CASE("sle_run writes the CSV outputs") {
  sle_run_options o = defaults();
  sle_config* cfg = nullptr;
  REQUIRE(sle_config_parse(kSmallRun, &o, &cfg) == SLE_OK);
  fs::path dir = fs::temp_directory_path() / "sle_capi_run";
  fs::remove_all(dir);
  REQUIRE(sle_run(cfg, dir.string().c_str(), &o) == SLE_OK);
  CHECK(fs::exists(dir / "observables.csv"));
  CHECK(fs::exists(dir / "profile_final.csv"));
  fs::remove_all(dir);
  sle_config_free(cfg);
}

TEST_CASE("run and experiment entry points are not interchangeable") {
  sle_run_options o = defaults();
  sle_config* run_cfg = nullptr;
  REQUIRE(sle_config_parse(kSmallRun, &o, &run_cfg) == SLE_OK);
  CHECK(sle_run_experiment(run_cfg, "unused_dir", &o) == SLE_ERR_INVALID);
  sle_config_free(run_cfg);

  sle_config* exp_cfg = nullptr;
  REQUIRE(sle_config_parse(R"({"preset": "example1"})", &o, &exp_cfg) ==
          SLE_OK);
  CHECK(sle_config_is_experiment(exp_cfg) == 1);
  CHECK(sle_run(exp_cfg, "unused_dir", &o) == SLE_ERR_INVALID);
  CHECK(sle_solver_create(exp_cfg, &o, nullptr) == SLE_ERR_INVALID);
  sle_config_free(exp_cfg);
}

TEST_CASE("version string is present") {
  const char* v = sle_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
}
