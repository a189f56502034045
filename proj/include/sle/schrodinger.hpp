#pragma once

#include <complex>
#include <vector>

#include "sle/grids.hpp"
#include "sle/potential.hpp"

namespace sle {

// Exact free flight in Fourier space: psi_hat_l *= exp(-i h dt omega_l^2 / 2).
// dt may be negative (the step is unitary and invertible).
void kinetic_step(WaveField& psi, double dt);

// Pointwise phase rotation psi_j *= exp(-i U(x_j) dt / h). Leaves |psi_j|
// unchanged, so mass and position density are preserved exactly.
void potential_phase_step(WaveField& psi, const EhrenfestPotential& up,
                          double dt);

// kinetic_step with the multiplier table cached across steps that share
// (grid, h, dt); used inside the time loop.
class KineticPropagator {
 public:
  void apply(WaveField& psi, double dt);

 private:
  int m_ = 0;
  double length_ = 0.0;
  double hdt_ = 0.0;
  bool primed_ = false;
  std::vector<std::complex<double>> mult_;
};

}  // namespace sle
