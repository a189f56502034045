/* C interface to the coupled Schrodinger-Liouville solver library.
 *
 * All entry points return sle_status; on failure sle_last_error() holds a
 * message for the calling thread. Handles are opaque and must be released
 * with the matching _free function. */
#ifndef SLE_C_API_H
#define SLE_C_API_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sle_status {
  SLE_OK = 0,
  SLE_ERR_IO = 1,      /* unreadable input or unwritable output */
  SLE_ERR_PARSE = 2,   /* config is not valid JSON */
  SLE_ERR_INVALID = 3, /* config violates the schema or a constraint */
  SLE_ERR_CFL = 4,     /* transport step exceeds the stability bound (strict mode) */
  SLE_ERR_NUMERIC = 5, /* non-finite values produced during a run */
  SLE_ERR_INTERNAL = 6
} sle_status;

typedef struct sle_config sle_config;
typedef struct sle_solver sle_solver;

typedef struct sle_run_options {
  int threads;     /* parallel workers for parameter sweeps, >= 1 */
  int strict_cfl;  /* nonzero: stability violations abort instead of warning */
  int paper_exact; /* nonzero: full-size variants of the preset studies */
} sle_run_options;

void sle_run_options_init(sle_run_options* opts);

/* Load and validate a JSON config. paper_exact affects preset expansion, so
 * the options are fixed at load time. */
sle_status sle_config_load(const char* path, const sle_run_options* opts,
                           sle_config** out);
sle_status sle_config_parse(const char* json_text, const sle_run_options* opts,
                            sle_config** out);

/* Canonical JSON echo of the fully resolved config (defaults explicit).
 * The pointer stays valid until the config is freed. */
const char* sle_config_resolved_json(const sle_config* cfg);

/* 1 when the config describes a parameter study, 0 for a single run. */
int sle_config_is_experiment(const sle_config* cfg);

void sle_config_free(sle_config* cfg);

/* Execute a single-run config; CSV files are written under out_dir. */
sle_status sle_run(const sle_config* cfg, const char* out_dir,
                   const sle_run_options* opts);

/* Execute an experiment config; CSV files are written under out_dir. */
sle_status sle_run_experiment(const sle_config* cfg, const char* out_dir,
                              const sle_run_options* opts);

/* Stepping interface over a single-run config. */
sle_status sle_solver_create(const sle_config* cfg,
                             const sle_run_options* opts, sle_solver** out);
sle_status sle_solver_advance(sle_solver* s, int nsteps);
double sle_solver_time(const sle_solver* s);

typedef struct sle_observables {
  double t;
  double mass_psi;   /* squared l2 norm of psi */
  double mass_mu;    /* phase-space integral of mu */
  double energy;     /* discrete total energy */
  double hgrad_norm; /* l2 norm of h d_x psi */
} sle_observables;

sle_status sle_solver_observe(const sle_solver* s, sle_observables* out);

void sle_solver_free(sle_solver* s);

/* Message for the most recent failure on the calling thread ("" if none). */
const char* sle_last_error(void);

/* Library version string. */
const char* sle_version(void);

#ifdef __cplusplus
}
#endif

#endif /* SLE_C_API_H */
