#pragma once

#include <vector>

#include "sle/grids.hpp"
#include "sle/liouville.hpp"
#include "sle/observables.hpp"
#include "sle/potential.hpp"
#include "sle/schrodinger.hpp"

namespace sle {

enum class Splitting { lie, strang };
enum class TransportOrder { euler, heun };

struct SleState {
  WaveField psi;
  PhaseDensity mu;
  double t = 0.0;
};

// Running a-priori bounds: the h-oscillation estimate
//   ||h d_x psi(t)|| <= ||h d_x psi(0)|| + C0 t,   C0 = sup|dV/dx|,
// and the energy estimate
//   E_d(t) <= (C1 + E_d(0)) e^t - C1,   C1 = 2 L^2 C + (L C / 2) deta,
// with L = sup|dV/dy| and C the (conserved) phase mass.
struct MonitorReport {
  double hgrad0 = 0.0;
  double c0 = 0.0;
  double energy0 = 0.0;
  double c1 = 0.0;
  long hgrad_violations = 0;
  long energy_violations = 0;
  double worst_hgrad_excess = 0.0;   // max of (value - bound), <= 0 when clean
  double worst_energy_excess = 0.0;
};

// Coupled integrator for the Schrodinger-Liouville system.
//
// Lie step (first order):
//   1. F from psi^n
//   2. psi* = kinetic_step(psi^n, dt); mu* = transport_step(mu^n, F, dt)
//   3. Upsilon_d from mu*
//   4. psi^{n+1} = potential_phase_step(psi*, Upsilon_d, dt); mu^{n+1} = mu*
//
// Strang step (A/2, B, A/2) with A = {kinetic + transport} and B = {phase
// rotation}; the force for the second half is recomputed from the mid-state
// psi, and the Heun transport variant evaluates the force at both substep
// endpoints (the phase rotation leaves |psi| unchanged, so forces computed
// before and after B coincide).
class SleSolver {
 public:
  SleSolver(SleState init, const CouplingPotential& pot, Splitting splitting,
            TransportOrder transport_order = TransportOrder::euler,
            CflMode cfl_mode = CflMode::warn);

  void step(double dt);
  const SleState& state() const { return state_; }
  const CouplingPotential& potential() const { return pot_; }
  ObservableRecord observe() const;
  // Evaluates both bounds at the current state and tallies violations.
  void check_monitors();
  const MonitorReport& monitors() const { return monitors_; }
  const TransportStats& transport_stats() const { return tstats_; }

 private:
  void lie_step(double dt);
  void strang_step(double dt);

  SleState state_;
  CouplingPotential pot_;
  Splitting splitting_;
  TransportOrder order_;
  CflMode cfl_mode_;
  PotentialTables tables_;
  KineticPropagator kin_;
  MonitorReport monitors_;
  TransportStats tstats_;
};

}  // namespace sle
