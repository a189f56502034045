#include "sle/liouville.hpp"

#include <cmath>
#include <string>

#include "sle/errors.hpp"

namespace sle {
namespace {

void check_force(std::span<const double> force, int expected) {
  if (static_cast<int>(force.size()) != expected)
    fail(ErrorCode::invalid, "force vector size mismatch");
  for (double f : force)
    if (!std::isfinite(f))
      fail(ErrorCode::numeric, "non-finite force entry in transport step");
}

double max_abs(std::span<const double> v) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x));
  return worst;
}

void check_cfl(double ratio, CflMode mode, TransportStats* stats) {
  if (stats) stats->worst_ratio = std::max(stats->worst_ratio, ratio);
  if (ratio > 1.0 + 1e-12) {
    if (mode == CflMode::strict)
      fail(ErrorCode::cfl,
           "CFL violation: dt exceeds the stable step by factor " +
               std::to_string(ratio));
    if (stats) ++stats->violations;
  }
}

// speed indexed by the second (column) index: out = s_k (D_y f)_jk.
void accumulate_dy(const PhaseDensity& f, std::span<const double> speed_by_k,
                   std::vector<double>& out) {
  const PhaseGrid& g = f.grid;
  const double inv_dy = 1.0 / g.dy();
  std::vector<double> sp(g.neta), sm(g.neta);
  for (int k = 0; k < g.neta; ++k) {
    const double s = speed_by_k[k];
    sp[k] = 0.5 * (s + std::abs(s)) * inv_dy;
    sm[k] = 0.5 * (s - std::abs(s)) * inv_dy;
  }
  for (int j = 0; j < g.ny; ++j) {
    const double* cur = &f.mu[static_cast<size_t>(j) * g.neta];
    const double* prev =
        &f.mu[static_cast<size_t>(j == 0 ? g.ny - 1 : j - 1) * g.neta];
    const double* next =
        &f.mu[static_cast<size_t>(j == g.ny - 1 ? 0 : j + 1) * g.neta];
    double* o = &out[static_cast<size_t>(j) * g.neta];
    for (int k = 0; k < g.neta; ++k)
      o[k] += sp[k] * (cur[k] - prev[k]) + sm[k] * (next[k] - cur[k]);
  }
}

// speed indexed by the first (row) index: out = s_j (D_eta f)_jk.
void accumulate_deta(const PhaseDensity& f, std::span<const double> speed_by_j,
                     std::vector<double>& out) {
  const PhaseGrid& g = f.grid;
  const double inv_de = 1.0 / g.deta();
  for (int j = 0; j < g.ny; ++j) {
    const double s = speed_by_j[j];
    const double sp = 0.5 * (s + std::abs(s)) * inv_de;
    const double sm = 0.5 * (s - std::abs(s)) * inv_de;
    const double* cur = &f.mu[static_cast<size_t>(j) * g.neta];
    double* o = &out[static_cast<size_t>(j) * g.neta];
    for (int k = 0; k < g.neta; ++k) {
      const double prev = cur[k == 0 ? g.neta - 1 : k - 1];
      const double next = cur[k == g.neta - 1 ? 0 : k + 1];
      o[k] += sp * (cur[k] - prev) + sm * (next - cur[k]);
    }
  }
}

std::vector<double> eta_speeds(const PhaseGrid& g) {
  std::vector<double> s(g.neta);
  for (int k = 0; k < g.neta; ++k) s[k] = g.eta(k);
  return s;
}

std::vector<double> transport_terms(const PhaseDensity& mu,
                                    std::span<const double> force) {
  std::vector<double> terms(mu.mu.size(), 0.0);
  accumulate_dy(mu, eta_speeds(mu.grid), terms);
  accumulate_deta(mu, force, terms);
  return terms;
}

double combined_cfl_ratio(const PhaseGrid& g, std::span<const double> force,
                          double dt) {
  return dt * (g.max_abs_eta() / g.dy() + max_abs(force) / g.deta());
}

}  // namespace

std::vector<double> upwind_dy(const PhaseDensity& mu) {
  std::vector<double> out(mu.mu.size(), 0.0);
  accumulate_dy(mu, eta_speeds(mu.grid), out);
  return out;
}

std::vector<double> upwind_deta(const PhaseDensity& mu,
                                std::span<const double> force) {
  check_force(force, mu.grid.ny);
  std::vector<double> out(mu.mu.size(), 0.0);
  accumulate_deta(mu, force, out);
  return out;
}

double cfl_max_dt(const PhaseGrid& grid, double sup_force) {
  const double denom =
      grid.max_abs_eta() / grid.dy() + std::abs(sup_force) / grid.deta();
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / denom;
}

void transport_step(PhaseDensity& mu, std::span<const double> force, double dt,
                    CflMode mode, TransportStats* stats) {
  check_force(force, mu.grid.ny);
  check_cfl(combined_cfl_ratio(mu.grid, force, dt), mode, stats);
  auto terms = transport_terms(mu, force);
  for (size_t i = 0; i < mu.mu.size(); ++i) mu.mu[i] -= dt * terms[i];
}

void transport_step_heun(PhaseDensity& mu, std::span<const double> force_t0,
                         std::span<const double> force_t1, double dt,
                         CflMode mode, TransportStats* stats) {
  check_force(force_t0, mu.grid.ny);
  check_force(force_t1, mu.grid.ny);
  check_cfl(std::max(combined_cfl_ratio(mu.grid, force_t0, dt),
                     combined_cfl_ratio(mu.grid, force_t1, dt)),
            mode, stats);
  auto t0 = transport_terms(mu, force_t0);
  PhaseDensity predictor = mu;
  for (size_t i = 0; i < mu.mu.size(); ++i)
    predictor.mu[i] = mu.mu[i] - dt * t0[i];
  auto t1 = transport_terms(predictor, force_t1);
  for (size_t i = 0; i < mu.mu.size(); ++i)
    mu.mu[i] -= 0.5 * dt * (t0[i] + t1[i]);
}

void advect_y(PhaseDensity& f, std::span<const double> speed_by_k, double dt,
              CflMode mode, TransportStats* stats) {
  if (static_cast<int>(speed_by_k.size()) != f.grid.neta)
    fail(ErrorCode::invalid, "advect_y speed vector size mismatch");
  check_cfl(dt * max_abs(speed_by_k) / f.grid.dy(), mode, stats);
  std::vector<double> terms(f.mu.size(), 0.0);
  accumulate_dy(f, speed_by_k, terms);
  for (size_t i = 0; i < f.mu.size(); ++i) f.mu[i] -= dt * terms[i];
}

void advect_eta(PhaseDensity& f, std::span<const double> speed_by_j, double dt,
                CflMode mode, TransportStats* stats) {
  check_force(speed_by_j, f.grid.ny);
  check_cfl(dt * max_abs(speed_by_j) / f.grid.deta(), mode, stats);
  std::vector<double> terms(f.mu.size(), 0.0);
  accumulate_deta(f, speed_by_j, terms);
  for (size_t i = 0; i < f.mu.size(); ++i) f.mu[i] -= dt * terms[i];
}

}  // namespace sle
