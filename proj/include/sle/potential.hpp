#pragma once

#include <functional>
#include <vector>

#include "sle/grids.hpp"

namespace sle {

// Computational box [x_lo, x_hi] x [y_lo, y_hi] over which the derivative
// sup-norm bounds are taken.
struct Box {
  double x_lo = 0.0, x_hi = 1.0;
  double y_lo = 0.0, y_hi = 1.0;
};

// Interaction potential V(x, y) >= 0 with partial derivatives and their
// sup bounds on the box. sup_dv_dy is the Lipschitz constant L entering the
// CFL bound and the energy estimate; sup_dv_dx drives the h-oscillation
// monitor.
struct CouplingPotential {
  std::function<double(double, double)> v;
  std::function<double(double, double)> dv_dx;
  std::function<double(double, double)> dv_dy;
  double sup_dv_dx = 0.0;
  double sup_dv_dy = 0.0;
  Box box{};
};

// V(x, y) = (x + y)^2 / 2 with exact corner bounds.
CouplingPotential make_quadratic_coupling(const Box& box);

// Wraps user callbacks; checks dv_dx/dv_dy against central differences of v
// (tolerance 1e-6) and v >= 0 on a sample lattice, and estimates the sup
// bounds by lattice sampling.
CouplingPotential make_coupling_potential(
    std::function<double(double, double)> v,
    std::function<double(double, double)> dv_dx,
    std::function<double(double, double)> dv_dy, const Box& box);

// Mean-field potential Upsilon_d sampled on the x-grid.
struct EhrenfestPotential {
  XGrid grid;
  std::vector<double> u;
};

// Upsilon_d(x_i) = dy deta sum_jk V(x_i, y_j) mu_jk.
EhrenfestPotential ehrenfest_potential(const CouplingPotential& pot,
                                       const PhaseDensity& mu,
                                       const XGrid& xgrid);

// F_j = -dx sum_m dV/dy(x_m, y_j) |psi_m|^2; |F_j| <= sup_dv_dy for unit mass.
std::vector<double> mean_force(const CouplingPotential& pot,
                               const WaveField& psi, const PhaseGrid& pgrid);

// G_j = dx sum_m V(x_m, y_j) |psi_m|^2 >= 0, Lipschitz with constant
// sup_dv_dy in y.
std::vector<double> g_integrand(const CouplingPotential& pot,
                                const WaveField& psi, const PhaseGrid& pgrid);

// Sampled V and dV/dy tables for the inner loops of a run; layouts match the
// summation order of ehrenfest_potential (x-major) and mean_force (y-major).
class PotentialTables {
 public:
  PotentialTables(const CouplingPotential& pot, const XGrid& xgrid,
                  const PhaseGrid& pgrid);
  EhrenfestPotential ehrenfest_potential(const PhaseDensity& mu) const;
  std::vector<double> mean_force(const WaveField& psi) const;
  const XGrid& xgrid() const { return xgrid_; }
  const PhaseGrid& pgrid() const { return pgrid_; }

 private:
  XGrid xgrid_;
  PhaseGrid pgrid_;
  std::vector<double> v_xmajor_;     // v_xmajor_[i*ny + j] = V(x_i, y_j)
  std::vector<double> dvdy_ymajor_;  // dvdy_ymajor_[j*m + i] = dV/dy(x_i, y_j)
};

}  // namespace sle
