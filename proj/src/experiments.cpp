#include "sle/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <future>
#include <mutex>
#include <thread>

#include "sle/csv.hpp"
#include "sle/ehrenfest_ode.hpp"
#include "sle/errors.hpp"
#include "sle/initial_data.hpp"
#include "sle/limit_solver.hpp"

namespace sle {
namespace {

// Runs fn(0..n-1) on up to `threads` workers. Exceptions are rethrown on the
// caller thread (first one wins); item order of side effects is up to the
// caller, so results must be written to per-index slots.
template <typename F>
void parallel_for(int n, int threads, F&& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> step_sizes(double t_final, double dt) {
  int n_full = static_cast<int>(std::floor(t_final / dt + 1e-12));
  double rem = t_final - n_full * dt;
  std::vector<double> steps(n_full, dt);
  if (rem > 1e-12 * std::max(1.0, t_final)) steps.push_back(rem);
  return steps;
}

long monitor_tally(const MonitorReport& m) {
  return m.hgrad_violations + m.energy_violations;
}

ErrorRow pair_error(double parameter, const SleState& a, const SleState& b) {
  ErrorRow row;
  row.parameter = parameter;
  row.err_psi = rel_l2_error(a.psi.psi, b.psi.psi);
  row.err_rho = rel_l2_error(position_density(a.psi), position_density(b.psi));
  row.err_mu = rel_l2_error(a.mu.mu, b.mu.mu);
  return row;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double xm = 0.0, ym = 0.0;
  for (size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= static_cast<double>(n);
  ym /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    num += (x[i] - xm) * (y[i] - ym);
    den += (x[i] - xm) * (x[i] - xm);
  }
  return den > 0.0 ? num / den : 0.0;
}

// Classical total energy of the limit pair, mirroring the coupled run's
// discrete energy: xi-kinetic of nu + coupling potential against the
// x-marginal of nu + eta-kinetic of mu.
double limit_energy(const CouplingPotential& pot, const PhaseDensity& nu,
                    const PhaseDensity& mu) {
  const PhaseGrid& ng = nu.grid;
  double kin = 0.0;
  for (int i = 0; i < ng.ny; ++i)
    for (int m = 0; m < ng.neta; ++m) {
      double xi = ng.eta(m);
      kin += 0.5 * xi * xi * nu.mu[static_cast<size_t>(i) * ng.neta + m];
    }
  kin *= ng.dy() * ng.deta();

  std::vector<double> rho = x_marginal(nu);
  XGrid xg{ng.y_lo, ng.y_hi, ng.ny};
  EhrenfestPotential up = ehrenfest_potential(pot, mu, xg);
  double pot_term = 0.0;
  for (int i = 0; i < ng.ny; ++i) pot_term += up.u[i] * rho[i];
  pot_term *= ng.dy();

  const PhaseGrid& mg = mu.grid;
  double mu_kin = 0.0;
  for (int j = 0; j < mg.ny; ++j)
    for (int k = 0; k < mg.neta; ++k) {
      double eta = mg.eta(k);
      mu_kin += 0.5 * eta * eta * mu.mu[static_cast<size_t>(j) * mg.neta + k];
    }
  mu_kin *= mg.dy() * mg.deta();
  return kin + pot_term + mu_kin;
}

ObservableRecord observe_limit(const LimitState& st,
                               const CouplingPotential& pot) {
  ObservableRecord rec;
  rec.t = st.t;
  rec.mass_psi = phase_mass(st.nu);  // quantum-side mass carried by nu
  rec.mass_mu = phase_mass(st.mu);
  rec.energy = limit_energy(pot, st.nu, st.mu);
  rec.hgrad = 0.0;  // no oscillation functional in the limit
  return rec;
}

struct LimitRunResult {
  std::vector<ObservableRecord> series;
  LimitState final_state;
  double dt = 0.0;
  long cfl_violations = 0;
};

LimitRunResult run_limit(const RunConfig& cfg, const ExperimentSpec& spec) {
  CouplingPotential pot = potential_for(cfg);
  PhaseGrid lgrid =
      make_phase_grid(cfg.xgrid.a, cfg.xgrid.b, spec.limit_nx,
                      -spec.limit_xi_max, spec.limit_xi_max, spec.limit_nxi);
  SleState init = initial_state(cfg);
  LimitState lstate{nu_from_wigner(init.psi, lgrid), std::move(init.mu), 0.0};
  LimitSolver solver(std::move(lstate), pot,
                     cfg.strict_cfl ? CflMode::strict : CflMode::warn);

  LimitRunResult res;
  double dt = spec.limit_dt;
  if (dt <= 0.0) {
    double cap = 0.9 * solver.max_dt();
    int n = std::max(1, static_cast<int>(
                            std::ceil(cfg.t_final / cap - 1e-12)));
    dt = cfg.t_final / n;
  }
  res.dt = dt;
  auto steps = step_sizes(cfg.t_final, dt);
  res.series.push_back(observe_limit(solver.state(), pot));
  for (size_t k = 0; k < steps.size(); ++k) {
    solver.step(steps[k]);
    if ((k + 1) % static_cast<size_t>(cfg.cadence) == 0 ||
        k + 1 == steps.size())
      res.series.push_back(observe_limit(solver.state(), pot));
  }
  res.final_state = solver.state();
  res.cfl_violations = solver.transport_stats().violations;
  return res;
}

// Means of f over centered blocks of m/coarse_n consecutive entries on a
// periodic grid: entry i averages the indices in
// [i*stride - stride/2, i*stride + stride/2).
std::vector<double> block_means(const std::vector<double>& f, int coarse_n) {
  const int m = static_cast<int>(f.size());
  if (coarse_n < 1 || m % coarse_n != 0)
    fail(ErrorCode::invalid,
         "comparison grid size must divide the profile grid size");
  const int stride = m / coarse_n;
  std::vector<double> out(static_cast<size_t>(coarse_n), 0.0);
  for (int i = 0; i < coarse_n; ++i) {
    const int start = i * stride - stride / 2;
    double acc = 0.0;
    for (int s = 0; s < stride; ++s) {
      int j = (start + s) % m;
      if (j < 0) j += m;
      acc += f[static_cast<size_t>(j)];
    }
    out[static_cast<size_t>(i)] = acc / stride;
  }
  return out;
}

// Coarse restriction of |psi|^2 onto a comparison x-grid: the mean over each
// coarse cell (the fine grid refines the coarse one). Post-caustic densities
// oscillate at scale h with O(1) amplitude, so only cell means — not point
// samples — converge to the smooth classical marginal as h shrinks.
std::vector<double> restrict_density(const WaveField& psi, int coarse_n) {
  std::vector<double> rho(static_cast<size_t>(psi.grid.m));
  for (int j = 0; j < psi.grid.m; ++j)
    rho[static_cast<size_t>(j)] = std::norm(psi.psi[static_cast<size_t>(j)]);
  return block_means(rho, coarse_n);
}

// Convolution with a fixed-width periodic Gaussian window (truncated at four
// widths, renormalized to unit sum).
std::vector<double> smoothed_profile(const std::vector<double>& f, double dx,
                                     double width) {
  const int n = static_cast<int>(f.size());
  const int reach =
      std::min(n / 2, static_cast<int>(std::ceil(4.0 * width / dx)));
  std::vector<double> kernel(static_cast<size_t>(2 * reach + 1));
  double sum = 0.0;
  for (int r = -reach; r <= reach; ++r) {
    const double u = r * dx / width;
    kernel[static_cast<size_t>(r + reach)] = std::exp(-0.5 * u * u);
    sum += kernel[static_cast<size_t>(r + reach)];
  }
  for (double& k : kernel) k /= sum;
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int r = -reach; r <= reach; ++r) {
      int j = (i + r) % n;
      if (j < 0) j += n;
      acc += kernel[static_cast<size_t>(r + reach)] * f[static_cast<size_t>(j)];
    }
    out[static_cast<size_t>(i)] = acc;
  }
  return out;
}

// Density comparison for the classical-limit study: both marginals are
// restricted to this many cells and smoothed with a Gaussian window of this
// width before taking the l2 distance. After wave crossings the quantum
// density carries O(1)-amplitude interference fringes at scale h, so
// pointwise profiles never settle; local averages against fixed smooth
// windows are the quantities that approach the classical marginal.
constexpr int kLimitCompareCells = 256;
constexpr double kLimitSmoothingWidth = 0.15;

int cyclic_dist(int a, int b, int n) {
  int d = std::abs(a - b) % n;
  return std::min(d, n - d);
}

ExperimentResult run_pairwise_sweep(const ExperimentSpec& spec,
                                    const RunOptions& opts) {
  ExperimentResult res;
  res.kind = spec.kind;
  const int n = static_cast<int>(spec.h_values.size());
  res.table.resize(n);
  std::vector<long> cfl(n, 0), mon(n, 0);
  parallel_for(n, opts.threads, [&](int i) {
    double h = spec.h_values[static_cast<size_t>(i)];
    RunConfig cfg_a = with_scale(spec.base, h);
    RunConfig cfg_b = cfg_a;
    cfg_b.dt = h / 10.0;
    RunResult a = run_sle(cfg_a);
    RunResult b = run_sle(cfg_b);
    res.table[static_cast<size_t>(i)] =
        pair_error(h, a.final_state, b.final_state);
    cfl[static_cast<size_t>(i)] = a.transport.violations + b.transport.violations;
    mon[static_cast<size_t>(i)] =
        monitor_tally(a.monitors) + monitor_tally(b.monitors);
  });
  for (int i = 0; i < n; ++i) {
    res.cfl_violations += cfl[static_cast<size_t>(i)];
    res.monitor_violations += mon[static_cast<size_t>(i)];
  }
  return res;
}

ExperimentResult run_time_convergence(const ExperimentSpec& spec,
                                      const RunOptions& opts) {
  ExperimentResult res;
  res.kind = spec.kind;
  RunConfig ref_cfg = spec.base;
  ref_cfg.dt = spec.reference_dt;
  RunResult ref = run_sle(ref_cfg);
  res.cfl_violations += ref.transport.violations;
  res.monitor_violations += monitor_tally(ref.monitors);

  const int n = static_cast<int>(spec.dt_values.size());
  res.table.resize(n);
  std::vector<long> cfl(n, 0), mon(n, 0);
  parallel_for(n, opts.threads, [&](int i) {
    RunConfig cfg = spec.base;
    cfg.dt = spec.dt_values[static_cast<size_t>(i)];
    RunResult r = run_sle(cfg);
    res.table[static_cast<size_t>(i)] =
        pair_error(cfg.dt, r.final_state, ref.final_state);
    cfl[static_cast<size_t>(i)] = r.transport.violations;
    mon[static_cast<size_t>(i)] = monitor_tally(r.monitors);
  });
  for (int i = 0; i < n; ++i) {
    res.cfl_violations += cfl[static_cast<size_t>(i)];
    res.monitor_violations += mon[static_cast<size_t>(i)];
  }

  std::vector<double> lx, lp, lr, lm;
  for (const ErrorRow& row : res.table) {
    lx.push_back(std::log(row.parameter));
    lp.push_back(std::log(std::max(row.err_psi, 1e-300)));
    lr.push_back(std::log(std::max(row.err_rho, 1e-300)));
    lm.push_back(std::log(std::max(row.err_mu, 1e-300)));
  }
  res.slope_psi = fit_slope(lx, lp);
  res.slope_rho = fit_slope(lx, lr);
  res.slope_mu = fit_slope(lx, lm);
  return res;
}

ExperimentResult run_ap_study(const ExperimentSpec& spec,
                              const RunOptions& opts) {
  ExperimentResult res;
  res.kind = spec.kind;
  const int n = static_cast<int>(spec.h_values.size());
  if (n == 0) return res;
  res.table.resize(n);
  res.sle_series.resize(static_cast<size_t>(n));

  // One classical-limit reference run, shared by every h. Its initial
  // phase-space density comes from the initial wave at the finest h of the
  // sweep — the best available projection of the h -> 0 data onto the limit
  // grid. Comparing every coupled run against this single reference makes
  // the distances measure only how the coupled runs approach the limit.
  const double h_fine =
      *std::min_element(spec.h_values.begin(), spec.h_values.end());
  RunConfig fine_cfg = with_scale(spec.base, h_fine);
  auto limit_future = std::async(
      std::launch::async, [&] { return run_limit(fine_cfg, spec); });

  std::vector<RunResult> sle_runs(static_cast<size_t>(n));
  std::vector<long> cfl(n, 0), mon(n, 0);
  parallel_for(n, opts.threads, [&](int i) {
    RunConfig cfg = with_scale(spec.base, spec.h_values[static_cast<size_t>(i)]);
    sle_runs[static_cast<size_t>(i)] = run_sle(cfg);
    cfl[static_cast<size_t>(i)] =
        sle_runs[static_cast<size_t>(i)].transport.violations;
    mon[static_cast<size_t>(i)] =
        monitor_tally(sle_runs[static_cast<size_t>(i)].monitors);
  });
  LimitRunResult limit_run = limit_future.get();

  const int cmp = std::min(kLimitCompareCells, spec.limit_nx);
  const double dx_cmp = (spec.base.xgrid.b - spec.base.xgrid.a) / cmp;
  const std::vector<double> rho_ref = smoothed_profile(
      block_means(x_marginal(limit_run.final_state.nu), cmp), dx_cmp,
      kLimitSmoothingWidth);
  for (int i = 0; i < n; ++i) {
    const RunResult& sle_run = sle_runs[static_cast<size_t>(i)];
    std::vector<double> rho_c = smoothed_profile(
        restrict_density(sle_run.final_state.psi, cmp), dx_cmp,
        kLimitSmoothingWidth);
    double acc = 0.0;
    for (size_t m = 0; m < rho_c.size(); ++m) {
      double d = rho_c[m] - rho_ref[m];
      acc += d * d;
    }
    ErrorRow row;
    row.parameter = spec.h_values[static_cast<size_t>(i)];
    row.err_rho = std::sqrt(dx_cmp * acc);
    row.err_mu = rel_l2_error(sle_run.final_state.mu.mu,
                              limit_run.final_state.mu.mu);
    res.table[static_cast<size_t>(i)] = row;
    res.sle_series[static_cast<size_t>(i)] = sle_run.series;
    res.cfl_violations += cfl[static_cast<size_t>(i)];
    res.monitor_violations += mon[static_cast<size_t>(i)];
  }
  res.limit_series.push_back(limit_run.series);
  res.limit_dts.push_back(limit_run.dt);
  res.cfl_violations += limit_run.cfl_violations;
  return res;
}

ExperimentResult run_ode_crosscheck(const ExperimentSpec& spec,
                                    const RunOptions&) {
  ExperimentResult res;
  res.kind = spec.kind;
  const RunConfig& cfg = spec.base;
  CouplingPotential pot = potential_for(cfg);
  SleState init = initial_state(cfg);

  const PhaseGrid& pg = cfg.pgrid;
  auto cell_of = [&pg](double y, double eta) {
    int j = pg.wrap_j(static_cast<int>(std::lround((y - pg.y_lo) / pg.dy())));
    int k = pg.wrap_k(
        static_cast<int>(std::lround((eta - pg.eta_lo) / pg.deta())));
    return std::pair<int, int>{j, k};
  };
  // Start the particle exactly on the cell node carrying the point mass.
  auto [j0, k0] = cell_of(cfg.mu_init_y0, cfg.mu_init_eta0);
  OdeState ode{init.psi, pg.y(j0), pg.eta(k0), 0.0};

  SleSolver solver(std::move(init), pot, cfg.splitting, cfg.transport_order,
                   cfg.strict_cfl ? CflMode::strict : CflMode::warn);

  auto argmax_cell = [&pg](const PhaseDensity& mu) {
    size_t best = 0;
    for (size_t i = 1; i < mu.mu.size(); ++i)
      if (mu.mu[i] > mu.mu[best]) best = i;
    return std::pair<int, int>{static_cast<int>(best) / pg.neta,
                               static_cast<int>(best) % pg.neta};
  };

  auto record = [&] {
    solver.check_monitors();
    auto [ja, ka] = argmax_cell(solver.state().mu);
    auto [jc, kc] = cell_of(ode.y, ode.eta);
    int dist = std::max(cyclic_dist(ja, jc, pg.ny),
                        cyclic_dist(ka, kc, pg.neta));
    res.ode_rows.push_back(OdeCheckRow{solver.state().t, ode.y, ode.eta,
                                       pg.y(ja), pg.eta(ka), dist});
    res.max_cell_dist = std::max(res.max_cell_dist, dist);
  };

  record();
  for (double dt : step_sizes(cfg.t_final, cfg.dt)) {
    solver.step(dt);
    ode_step(ode, pot, dt);
    record();
  }
  res.cfl_violations = solver.transport_stats().violations;
  res.monitor_violations = monitor_tally(solver.monitors());
  return res;
}

void write_observable_csv(const std::string& path, const std::string& resolved,
                          const std::vector<std::string>& extra_comments,
                          const std::vector<ObservableRecord>& series) {
  CsvFile csv(path);
  csv.comment(resolved);
  for (const auto& c : extra_comments) csv.comment(c);
  const std::string cols[] = {"t", "mass_psi", "mass_mu", "energy_Ed",
                              "hgrad_norm"};
  csv.header(cols);
  for (const auto& r : series) {
    const double vals[] = {r.t, r.mass_psi, r.mass_mu, r.energy, r.hgrad};
    csv.row(vals);
  }
  csv.close();
}

void write_profile_csv(const std::string& path, const std::string& resolved,
                       const XGrid& grid, const ProfileRecord& p) {
  CsvFile csv(path);
  csv.comment(resolved);
  csv.comment("t = " + format_sci(p.t));
  const std::string cols[] = {"x", "rho", "current"};
  csv.header(cols);
  for (int j = 0; j < grid.m; ++j) {
    const double vals[] = {grid.point(j), p.rho[static_cast<size_t>(j)],
                           p.current[static_cast<size_t>(j)]};
    csv.row(vals);
  }
  csv.close();
}

}  // namespace

SleState initial_state(const RunConfig& cfg) {
  SleState st;
  st.psi = cfg.psi_init == "wkb_cosh" ? make_psi_wkb_cosh(cfg.xgrid, cfg.h)
                                      : make_psi_wkb_sine(cfg.xgrid, cfg.h);
  st.mu = cfg.mu_init == "bump"
              ? make_mu_bump(cfg.pgrid)
              : make_mu_point_mass(cfg.pgrid, cfg.mu_init_y0,
                                   cfg.mu_init_eta0);
  st.t = 0.0;
  return st;
}

CouplingPotential potential_for(const RunConfig& cfg) {
  Box box{cfg.xgrid.a, cfg.xgrid.b, cfg.pgrid.y_lo, cfg.pgrid.y_hi};
  return make_quadratic_coupling(box);
}

double rel_l2_error(const std::vector<double>& a,
                    const std::vector<double>& b) {
  if (a.size() != b.size())
    fail(ErrorCode::invalid, "size mismatch in error computation");
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    num += d * d;
    den += b[i] * b[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double rel_l2_error(const std::vector<std::complex<double>>& a,
                    const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size())
    fail(ErrorCode::invalid, "size mismatch in error computation");
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

RunResult run_sle(const RunConfig& cfg) {
  CouplingPotential pot = potential_for(cfg);
  SleSolver solver(initial_state(cfg), pot, cfg.splitting, cfg.transport_order,
                   cfg.strict_cfl ? CflMode::strict : CflMode::warn);
  RunResult res;
  auto steps = step_sizes(cfg.t_final, cfg.dt);
  res.steps = static_cast<int>(steps.size());

  auto push_profile = [&res, &solver] {
    res.profiles.push_back(ProfileRecord{solver.state().t,
                                         position_density(solver.state().psi),
                                         current_density(solver.state().psi)});
  };
  auto record = [&] {
    res.series.push_back(solver.observe());
    solver.check_monitors();
    if (cfg.profiles == "checkpoints") push_profile();
  };

  record();
  for (size_t k = 0; k < steps.size(); ++k) {
    solver.step(steps[k]);
    if ((k + 1) % static_cast<size_t>(cfg.cadence) == 0 ||
        k + 1 == steps.size())
      record();
  }
  if (cfg.profiles == "final") push_profile();
  res.final_state = solver.state();
  res.monitors = solver.monitors();
  res.transport = solver.transport_stats();
  return res;
}

ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const RunOptions& opts) {
  ExperimentSpec eff = spec;
  eff.base.strict_cfl = eff.base.strict_cfl || opts.strict_cfl;
  if (eff.kind == "dt_independence" || eff.kind == "error_vs_h")
    return run_pairwise_sweep(eff, opts);
  if (eff.kind == "time_convergence") return run_time_convergence(eff, opts);
  if (eff.kind == "ap_study") return run_ap_study(eff, opts);
  if (eff.kind == "ode_crosscheck") return run_ode_crosscheck(eff, opts);
  fail(ErrorCode::invalid, "unknown experiment kind \"" + eff.kind + "\"");
}

void write_run_csv(const RunConfig& cfg, const RunResult& res,
                   const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create output directory \"" + out_dir + "\"");
  const std::string resolved = resolved_json(cfg);
  write_observable_csv(out_dir + "/observables.csv", resolved, {"run: sle"},
                       res.series);
  if (cfg.profiles == "final" && !res.profiles.empty()) {
    write_profile_csv(out_dir + "/profile_final.csv", resolved, cfg.xgrid,
                      res.profiles.back());
  } else if (cfg.profiles == "checkpoints") {
    for (size_t i = 0; i < res.profiles.size(); ++i) {
      char name[40];
      std::snprintf(name, sizeof(name), "/profile_%04zu.csv", i);
      write_profile_csv(out_dir + name, resolved, cfg.xgrid,
                        res.profiles[i]);
    }
  }
}

void write_experiment_csv(const ExperimentSpec& spec,
                          const ExperimentResult& res,
                          const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::io, "cannot create output directory \"" + out_dir + "\"");
  const std::string resolved = resolved_json(spec);

  if (spec.kind == "ode_crosscheck") {
    {
      CsvFile csv(out_dir + "/trajectory.csv");
      csv.comment(resolved);
      const std::string cols[] = {"t", "y", "eta"};
      csv.header(cols);
      for (const auto& r : res.ode_rows) {
        const double vals[] = {r.t, r.y, r.eta};
        csv.row(vals);
      }
      csv.close();
    }
    CsvFile csv(out_dir + "/crosscheck.csv");
    csv.comment(resolved);
    csv.comment("max_cell_distance = " + std::to_string(res.max_cell_dist));
    const std::string cols[] = {"t",      "y",        "eta",
                                "y_cell", "eta_cell", "cell_distance"};
    csv.header(cols);
    for (const auto& r : res.ode_rows) {
      const double vals[] = {r.t,      r.y,        r.eta,
                             r.y_cell, r.eta_cell, static_cast<double>(r.cell_dist)};
      csv.row(vals);
    }
    csv.close();
    return;
  }

  CsvFile csv(out_dir + "/" + spec.kind + ".csv");
  csv.comment(resolved);
  if (spec.kind == "time_convergence") {
    csv.comment("slope_psi = " + format_sci(res.slope_psi));
    csv.comment("slope_rho = " + format_sci(res.slope_rho));
    csv.comment("slope_mu = " + format_sci(res.slope_mu));
  }
  const std::string cols[] = {"parameter", "err_psi", "err_rho", "err_mu"};
  csv.header(cols);
  for (const auto& row : res.table) {
    const double vals[] = {row.parameter, row.err_psi, row.err_rho,
                           row.err_mu};
    csv.row(vals);
  }
  csv.close();

  if (spec.kind == "ap_study") {
    for (size_t i = 0; i < res.sle_series.size(); ++i) {
      std::string tag = std::to_string(i);
      write_observable_csv(
          out_dir + "/observables_h" + tag + ".csv", resolved,
          {"run: sle", "h = " + format_sci(spec.h_values[i])},
          res.sle_series[i]);
    }
    if (!res.limit_series.empty()) {
      const double h_fine =
          *std::min_element(spec.h_values.begin(), spec.h_values.end());
      write_observable_csv(
          out_dir + "/observables_limit.csv", resolved,
          {"run: limit", "initial data from h = " + format_sci(h_fine),
           "limit_dt = " + format_sci(res.limit_dts[0])},
          res.limit_series[0]);
    }
  }
}

void execute_run(const RunConfig& cfg, const RunOptions& opts,
                 const std::string& out_dir) {
  RunConfig eff = cfg;
  eff.strict_cfl = eff.strict_cfl || opts.strict_cfl;
  RunResult res = run_sle(eff);
  write_run_csv(eff, res, out_dir);
}

void execute_experiment(const ExperimentSpec& spec, const RunOptions& opts,
                        const std::string& out_dir) {
  ExperimentResult res = run_experiment(spec, opts);
  ExperimentSpec eff = spec;
  eff.base.strict_cfl = eff.base.strict_cfl || opts.strict_cfl;
  write_experiment_csv(eff, res, out_dir);
}

}  // namespace sle
