#include "sle/ehrenfest_ode.hpp"

#include <cmath>
#include <complex>

#include "sle/schrodinger.hpp"

namespace sle {

double particle_force(const CouplingPotential& pot, const WaveField& psi,
                      double y) {
  double acc = 0.0;
  for (int m = 0; m < psi.grid.m; ++m)
    acc += pot.dv_dy(psi.grid.point(m), y) * std::norm(psi.psi[m]);
  return -psi.grid.dx() * acc;
}

void ode_step(OdeState& state, const CouplingPotential& pot, double dt) {
  kinetic_step(state.psi, dt);
  const double f = particle_force(pot, state.psi, state.y);
  state.eta += dt * f;
  state.y += dt * state.eta;
  EhrenfestPotential up;
  up.grid = state.psi.grid;
  up.u.resize(state.psi.grid.m);
  for (int m = 0; m < state.psi.grid.m; ++m)
    up.u[m] = pot.v(state.psi.grid.point(m), state.y);
  potential_phase_step(state.psi, up, dt);
  state.t += dt;
}

}  // namespace sle
