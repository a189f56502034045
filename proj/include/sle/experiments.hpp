#pragma once

#include <string>
#include <vector>

#include "sle/config.hpp"
#include "sle/observables.hpp"
#include "sle/sle_solver.hpp"

namespace sle {

struct RunOptions {
  int threads = 1;
  bool strict_cfl = false;
};

struct ProfileRecord {
  double t = 0.0;
  std::vector<double> rho;
  std::vector<double> current;
};

// Output of one coupled run: the observable series sampled at the configured
// cadence (always including t = 0 and the final time), the final state, and
// the monitor and CFL tallies accumulated along the way.
struct RunResult {
  std::vector<ObservableRecord> series;
  std::vector<ProfileRecord> profiles;
  SleState final_state;
  MonitorReport monitors;
  TransportStats transport;
  int steps = 0;
};

RunResult run_sle(const RunConfig& cfg);

// Relative l2 difference ||a - b|| / ||b|| (uniform-weight grids, so the
// quadrature weight cancels).
double rel_l2_error(const std::vector<double>& a, const std::vector<double>& b);
double rel_l2_error(const std::vector<std::complex<double>>& a,
                    const std::vector<std::complex<double>>& b);

struct ErrorRow {
  double parameter = 0.0;  // h for sweeps over h, dt for the time study
  double err_psi = 0.0;
  double err_rho = 0.0;
  double err_mu = 0.0;
};

struct OdeCheckRow {
  double t = 0.0;
  double y = 0.0;         // particle ODE position
  double eta = 0.0;       // particle ODE momentum
  double y_cell = 0.0;    // argmax cell of mu
  double eta_cell = 0.0;
  int cell_dist = 0;      // cyclic Chebyshev index distance between the two
};

struct ExperimentResult {
  std::string kind;
  std::vector<ErrorRow> table;
  // time_convergence: least-squares slopes of log(err) against log(dt)
  double slope_psi = 0.0;
  double slope_rho = 0.0;
  double slope_mu = 0.0;
  // ap_study: per-h observable series for the coupled runs, plus the series
  // and the time step of the single shared limit run (one entry each)
  std::vector<std::vector<ObservableRecord>> sle_series;
  std::vector<std::vector<ObservableRecord>> limit_series;
  std::vector<double> limit_dts;
  // ode_crosscheck
  std::vector<OdeCheckRow> ode_rows;
  int max_cell_dist = 0;
  // tallies summed over every run executed
  long cfl_violations = 0;
  long monitor_violations = 0;
};

ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const RunOptions& opts);

// CSV emission (creates out_dir if needed). Every file embeds the resolved
// config as a comment block.
void write_run_csv(const RunConfig& cfg, const RunResult& res,
                   const std::string& out_dir);
void write_experiment_csv(const ExperimentSpec& spec,
                          const ExperimentResult& res,
                          const std::string& out_dir);

// Load-and-go entry points used by the C API and the CLI.
void execute_run(const RunConfig& cfg, const RunOptions& opts,
                 const std::string& out_dir);
void execute_experiment(const ExperimentSpec& spec, const RunOptions& opts,
                        const std::string& out_dir);

// Initial data and potential exactly as a run would build them.
SleState initial_state(const RunConfig& cfg);
CouplingPotential potential_for(const RunConfig& cfg);

}  // namespace sle
