#pragma once

#include <vector>

#include "sle/grids.hpp"
#include "sle/liouville.hpp"
#include "sle/potential.hpp"

namespace sle {

// Classical-limit system: a phase-space density nu(x, xi) replaces psi, and
// the pair (nu, mu) evolves by coupled transport. nu reuses the cyclic
// PhaseDensity container with (y, eta) standing in for (x, xi).
struct LimitState {
  PhaseDensity nu;
  PhaseDensity mu;
  double t = 0.0;
};

// F0_j = -dx dxi sum_im dV/dy(x_i, y_j) nu_im, the classical mean force.
std::vector<double> limit_force(const CouplingPotential& pot,
                                const PhaseDensity& nu,
                                const PhaseGrid& mu_grid);

// x-marginal dxi * sum_m nu_im, the limit position density.
std::vector<double> x_marginal(const PhaseDensity& nu);

// Split step mirroring the quantum scheme:
//   substep 1: advect nu in x with speed xi; transport mu with force F0(nu)
//   substep 2: from the updated mu form Upsilon0_d and advect nu in xi with
//              speed -d_x Upsilon0_d(x)
class LimitSolver {
 public:
  LimitSolver(LimitState init, const CouplingPotential& pot,
              CflMode cfl_mode = CflMode::warn);
  void step(double dt);
  const LimitState& state() const { return state_; }
  const TransportStats& transport_stats() const { return tstats_; }
  // Largest dt admissible for all three advection substeps.
  double max_dt() const;

 private:
  LimitState state_;
  CouplingPotential pot_;
  CflMode cfl_mode_;
  TransportStats tstats_;
  std::vector<double> xi_speeds_;
};

// Initial nu from the Wigner transform of psi: the full-band transform is
// evaluated at the limit grid's x nodes (the x interval must match psi's grid
// with a point count dividing it) and binned into the coarse xi cells (the xi
// interval must be symmetric; content outside it is dropped), then clipped at
// 0 and renormalized to mass 1.
PhaseDensity nu_from_wigner(const WaveField& psi, const PhaseGrid& limit_grid);

}  // namespace sle
