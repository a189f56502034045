#pragma once

#include "sle/grids.hpp"
#include "sle/potential.hpp"

namespace sle {

// Point-particle limit of the classical side: mu = delta(y - y(t), eta - eta(t))
// coupled to the wave function through V(x, y(t)).
struct OdeState {
  WaveField psi;
  double y = 0.0;
  double eta = 0.0;
  double t = 0.0;
};

// -dx sum_m dV/dy(x_m, y) |psi_m|^2, the force on the particle.
double particle_force(const CouplingPotential& pot, const WaveField& psi,
                      double y);

// Split update mirroring the Lie step: exact kinetic flight of psi, then
// symplectic Euler on the particle (eta then y) with the force taken from the
// flown psi, then phase rotation by V(., y_new).
void ode_step(OdeState& state, const CouplingPotential& pot, double dt);

}  // namespace sle
