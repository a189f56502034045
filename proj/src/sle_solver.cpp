#include "sle/sle_solver.hpp"

#include <cmath>

#include "sle/errors.hpp"

namespace sle {

SleSolver::SleSolver(SleState init, const CouplingPotential& pot,
                     Splitting splitting, TransportOrder transport_order,
                     CflMode cfl_mode)
    : state_(std::move(init)),
      pot_(pot),
      splitting_(splitting),
      order_(transport_order),
      cfl_mode_(cfl_mode),
      tables_(pot, state_.psi.grid, state_.mu.grid) {
  monitors_.hgrad0 = hgrad_norm(state_.psi);
  monitors_.c0 = pot_.sup_dv_dx;
  const double mass = phase_mass(state_.mu);
  const double L = pot_.sup_dv_dy;
  monitors_.c1 =
      2.0 * L * L * mass + 0.5 * L * mass * state_.mu.grid.deta();
  monitors_.energy0 = discrete_energy(
      state_.psi, state_.mu, tables_.ehrenfest_potential(state_.mu));
}

void SleSolver::step(double dt) {
  if (splitting_ == Splitting::lie)
    lie_step(dt);
  else
    strang_step(dt);
  for (const auto& v : state_.psi.psi)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(ErrorCode::numeric, "non-finite wave function value after step");
}

void SleSolver::lie_step(double dt) {
  auto force = tables_.mean_force(state_.psi);
  kin_.apply(state_.psi, dt);
  transport_step(state_.mu, force, dt, cfl_mode_, &tstats_);
  auto up = tables_.ehrenfest_potential(state_.mu);
  potential_phase_step(state_.psi, up, dt);
  state_.t += dt;
}

void SleSolver::strang_step(double dt) {
  auto f0 = tables_.mean_force(state_.psi);
  kin_.apply(state_.psi, 0.5 * dt);
  if (order_ == TransportOrder::heun) {
    auto f_mid = tables_.mean_force(state_.psi);
    transport_step_heun(state_.mu, f0, f_mid, 0.5 * dt, cfl_mode_, &tstats_);
  } else {
    transport_step(state_.mu, f0, 0.5 * dt, cfl_mode_, &tstats_);
  }
  auto up = tables_.ehrenfest_potential(state_.mu);
  potential_phase_step(state_.psi, up, dt);
  auto f1 = tables_.mean_force(state_.psi);
  kin_.apply(state_.psi, 0.5 * dt);
  if (order_ == TransportOrder::heun) {
    auto f_end = tables_.mean_force(state_.psi);
    transport_step_heun(state_.mu, f1, f_end, 0.5 * dt, cfl_mode_, &tstats_);
  } else {
    transport_step(state_.mu, f1, 0.5 * dt, cfl_mode_, &tstats_);
  }
  state_.t += dt;
}

ObservableRecord SleSolver::observe() const {
  ObservableRecord rec;
  rec.t = state_.t;
  const double n = l2_norm(state_.psi);
  rec.mass_psi = n * n;
  rec.mass_mu = phase_mass(state_.mu);
  rec.energy = discrete_energy(state_.psi, state_.mu,
                               tables_.ehrenfest_potential(state_.mu));
  rec.hgrad = hgrad_norm(state_.psi);
  return rec;
}

void SleSolver::check_monitors() {
  const double t = state_.t;
  const double hg = hgrad_norm(state_.psi);
  const double hg_bound = monitors_.hgrad0 + monitors_.c0 * t;
  const double hg_excess = hg - hg_bound - 1e-12 * (1.0 + std::abs(hg_bound));
  monitors_.worst_hgrad_excess = std::max(monitors_.worst_hgrad_excess, hg - hg_bound);
  if (hg_excess > 0.0) ++monitors_.hgrad_violations;

  const double e = discrete_energy(state_.psi, state_.mu,
                                   tables_.ehrenfest_potential(state_.mu));
  const double e_bound =
      (monitors_.c1 + monitors_.energy0) * std::exp(t) - monitors_.c1;
  const double e_excess = e - e_bound - 1e-12 * (1.0 + std::abs(e_bound));
  monitors_.worst_energy_excess = std::max(monitors_.worst_energy_excess, e - e_bound);
  if (e_excess > 0.0) ++monitors_.energy_violations;
}

}  // namespace sle
