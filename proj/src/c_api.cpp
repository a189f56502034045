#include "sle_c_api.h"

#include <exception>
#include <string>
#include <vector>

#include "sle/config.hpp"
#include "sle/errors.hpp"
#include "sle/experiments.hpp"
#include "sle/sle_solver.hpp"

namespace {

thread_local std::string g_last_error;

sle_status status_of(sle::ErrorCode code) {
  return static_cast<sle_status>(static_cast<int>(code));
}

template <typename F>
sle_status guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SLE_OK;
  } catch (const sle::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SLE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SLE_ERR_INTERNAL;
  }
}

sle::RunOptions to_run_options(const sle_run_options* opts) {
  sle::RunOptions out;
  if (opts) {
    out.threads = opts->threads > 0 ? opts->threads : 1;
    out.strict_cfl = opts->strict_cfl != 0;
  }
  return out;
}

sle::LoadOptions to_load_options(const sle_run_options* opts) {
  sle::LoadOptions out;
  if (opts) out.paper_exact = opts->paper_exact != 0;
  return out;
}

}  // namespace

struct sle_config {
  sle::LoadedConfig loaded;
};

struct sle_solver {
  sle::SleSolver impl;
  double dt;
};

extern "C" {

void sle_run_options_init(sle_run_options* opts) {
  if (!opts) return;
  opts->threads = 1;
  opts->strict_cfl = 0;
  opts->paper_exact = 0;
}

sle_status sle_config_load(const char* path, const sle_run_options* opts,
                           sle_config** out) {
  return guarded([&] {
    if (!path || !out)
      sle::fail(sle::ErrorCode::invalid, "null argument to sle_config_load");
    auto cfg = new sle_config{sle::load_config_file(path, to_load_options(opts))};
    *out = cfg;
  });
}

sle_status sle_config_parse(const char* json_text, const sle_run_options* opts,
                            sle_config** out) {
  return guarded([&] {
    if (!json_text || !out)
      sle::fail(sle::ErrorCode::invalid, "null argument to sle_config_parse");
    auto cfg =
        new sle_config{sle::load_config_text(json_text, to_load_options(opts))};
    *out = cfg;
  });
}

const char* sle_config_resolved_json(const sle_config* cfg) {
  return cfg ? cfg->loaded.resolved.c_str() : "";
}

int sle_config_is_experiment(const sle_config* cfg) {
  return cfg && cfg->loaded.experiment.has_value() ? 1 : 0;
}

void sle_config_free(sle_config* cfg) { delete cfg; }

sle_status sle_run(const sle_config* cfg, const char* out_dir,
                   const sle_run_options* opts) {
  return guarded([&] {
    if (!cfg || !out_dir)
      sle::fail(sle::ErrorCode::invalid, "null argument to sle_run");
    if (!cfg->loaded.run)
      sle::fail(sle::ErrorCode::invalid,
                "config describes an experiment; use sle_run_experiment");
    sle::execute_run(*cfg->loaded.run, to_run_options(opts), out_dir);
  });
}

sle_status sle_run_experiment(const sle_config* cfg, const char* out_dir,
                              const sle_run_options* opts) {
  return guarded([&] {
    if (!cfg || !out_dir)
      sle::fail(sle::ErrorCode::invalid, "null argument to sle_run_experiment");
    if (!cfg->loaded.experiment)
      sle::fail(sle::ErrorCode::invalid,
                "config describes a single run; use sle_run");
    sle::execute_experiment(*cfg->loaded.experiment, to_run_options(opts),
                            out_dir);
  });
}

sle_status sle_solver_create(const sle_config* cfg,
                             const sle_run_options* opts, sle_solver** out) {
  return guarded([&] {
    if (!cfg || !out)
      sle::fail(sle::ErrorCode::invalid, "null argument to sle_solver_create");
    if (!cfg->loaded.run)
      sle::fail(sle::ErrorCode::invalid,
                "stepping requires a single-run config");
    sle::RunConfig rc = *cfg->loaded.run;
    rc.strict_cfl = rc.strict_cfl || to_run_options(opts).strict_cfl;
    sle::SleSolver solver(
        sle::initial_state(rc), sle::potential_for(rc), rc.splitting,
        rc.transport_order,
        rc.strict_cfl ? sle::CflMode::strict : sle::CflMode::warn);
    *out = new sle_solver{std::move(solver), rc.dt};
  });
}

sle_status sle_solver_advance(sle_solver* s, int nsteps) {
  return guarded([&] {
    if (!s) sle::fail(sle::ErrorCode::invalid, "null solver handle");
    if (nsteps < 0)
      sle::fail(sle::ErrorCode::invalid, "nsteps must be non-negative");
    for (int i = 0; i < nsteps; ++i) s->impl.step(s->dt);
  });
}

double sle_solver_time(const sle_solver* s) {
  return s ? s->impl.state().t : 0.0;
}

sle_status sle_solver_observe(const sle_solver* s, sle_observables* out) {
  return guarded([&] {
    if (!s || !out)
      sle::fail(sle::ErrorCode::invalid, "null argument to sle_solver_observe");
    sle::ObservableRecord rec = s->impl.observe();
    out->t = rec.t;
    out->mass_psi = rec.mass_psi;
    out->mass_mu = rec.mass_mu;
    out->energy = rec.energy;
    out->hgrad_norm = rec.hgrad;
  });
}

void sle_solver_free(sle_solver* s) { delete s; }

const char* sle_last_error(void) { return g_last_error.c_str(); }

const char* sle_version(void) { return "1.0.0"; }

}  // extern "C"
