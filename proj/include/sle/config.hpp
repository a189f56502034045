#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sle/grids.hpp"
#include "sle/sle_solver.hpp"

namespace sle {

// Fully resolved parameters of one coupled run. Produced from a JSON config
// file with all defaults made explicit; the §-style mesh default is
// dx = 2 pi h / 16 on x in [-pi, pi] and a 128^2 phase grid on [-2 pi, 2 pi]^2.
struct RunConfig {
  double h = 0.0;
  double dt = 0.0;
  double t_final = 0.0;
  Splitting splitting = Splitting::lie;
  TransportOrder transport_order = TransportOrder::euler;
  XGrid xgrid;
  PhaseGrid pgrid;
  std::string potential = "quadratic_coupling";
  std::string psi_init = "wkb_cosh";  // wkb_cosh | wkb_sine
  std::string mu_init = "bump";       // bump | point_mass
  double mu_init_y0 = 1.0;
  double mu_init_eta0 = 0.0;
  int cadence = 10;
  std::string profiles = "final";  // none | final | checkpoints
  bool strict_cfl = false;
};

// A parameter study. kind selects the driver:
//   dt_independence  pairs (dt, h/10-reference) runs per h, mu-difference table
//   error_vs_h       same pairing, psi/rho/mu error table over an h sweep
//   time_convergence dt sweep at fixed h against a fine-dt reference, slopes
//   ap_study         SLE runs vs classical-limit runs, rho distance per h
//   ode_crosscheck   point-mass mu run vs the particle ODE trajectory
struct ExperimentSpec {
  std::string kind;
  RunConfig base;  // template; h and dt are overridden per run
  std::vector<double> h_values;
  std::vector<double> dt_values;
  double reference_dt = 0.0;  // time_convergence
  int limit_nx = 128;
  int limit_nxi = 128;
  double limit_xi_max = 4.0;
  double limit_dt = 0.0;  // 0 = derived from the limit CFL bound
};

struct LoadOptions {
  bool paper_exact = false;  // full-size variants of the preset studies
};

struct LoadedConfig {
  std::optional<RunConfig> run;
  std::optional<ExperimentSpec> experiment;
  std::string resolved;  // canonical JSON echo with every default explicit
};

LoadedConfig load_config_file(const std::string& path,
                              const LoadOptions& opts = {});
LoadedConfig load_config_text(const std::string& text,
                              const LoadOptions& opts = {});

std::string resolved_json(const RunConfig& cfg);
std::string resolved_json(const ExperimentSpec& spec);

// base with h replaced and the mode count re-derived by the mesh rule
// dx = 2 pi h / 16 (keeping the x interval).
RunConfig with_scale(const RunConfig& base, double h);

// Steps covering [0, T]: full dt steps plus one shortened step when T is not
// an integer multiple of dt.
int time_step_count(double t_final, double dt);

}  // namespace sle
