#pragma once

#include <limits>
#include <span>
#include <vector>

#include "sle/grids.hpp"

namespace sle {

// First-order flux-split upwind transport terms on the cyclic phase grid.
// upwind_dy returns eta_k (D_y mu)_jk, upwind_deta returns F_j (D_eta mu)_jk,
// both in the row-major layout of PhaseDensity.

std::vector<double> upwind_dy(const PhaseDensity& mu);
std::vector<double> upwind_deta(const PhaseDensity& mu,
                                std::span<const double> force);

// Largest dt with max_k|eta_k| dt/dy + sup|F| dt/deta <= 1; +inf when both
// advection terms vanish.
double cfl_max_dt(const PhaseGrid& grid, double sup_force);

enum class CflMode { warn, strict };

struct TransportStats {
  double worst_ratio = 0.0;  // max over calls of dt * (speeds/spacing) sum
  long violations = 0;
};

// Forward-Euler step of the transport equation
//   d mu/dt + eta_k (D_y mu) + F_j (D_eta mu) = 0
// with both terms evaluated at the incoming mu. force must be finite and of
// size ny. A CFL violation errors in strict mode and is tallied otherwise.
void transport_step(PhaseDensity& mu, std::span<const double> force, double dt,
                    CflMode mode = CflMode::warn,
                    TransportStats* stats = nullptr);

// Heun (trapezoidal) step for second-order time accuracy; force_t0/force_t1
// are the forces at the beginning and end of the step.
void transport_step_heun(PhaseDensity& mu, std::span<const double> force_t0,
                         std::span<const double> force_t1, double dt,
                         CflMode mode = CflMode::warn,
                         TransportStats* stats = nullptr);

// Single-direction forward-Euler advection substeps built on the same
// stencils; the classical-limit solver uses these with (x, xi) in place of
// (y, eta). speed_by_k is indexed by the second grid index, speed_by_j by the
// first.
void advect_y(PhaseDensity& f, std::span<const double> speed_by_k, double dt,
              CflMode mode = CflMode::warn, TransportStats* stats = nullptr);
void advect_eta(PhaseDensity& f, std::span<const double> speed_by_j, double dt,
                CflMode mode = CflMode::warn, TransportStats* stats = nullptr);

}  // namespace sle
