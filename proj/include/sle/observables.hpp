#pragma once

#include <vector>

#include "sle/grids.hpp"
#include "sle/potential.hpp"

namespace sle {

// rho_j = |psi_j|^2
std::vector<double> position_density(const WaveField& psi);

// j_m = h Im(conj(psi_m) (d_x psi)_m), spectral derivative.
std::vector<double> current_density(const WaveField& psi);

// kappa_m = (h^2/2) |(d_x psi)_m|^2
std::vector<double> kinetic_density(const WaveField& psi);

// ||h d_x psi||_{l2}; the h-oscillation monitor quantity.
double hgrad_norm(const WaveField& psi);

// E_d = dx sum (h^2/2)|d_x psi|^2 + dx sum U|psi|^2 + dy deta sum (eta^2/2) mu
double discrete_energy(const WaveField& psi, const PhaseDensity& mu,
                       const EhrenfestPotential& up);

struct ObservableRecord {
  double t = 0.0;
  double mass_psi = 0.0;  // squared l2 norm of psi
  double mass_mu = 0.0;
  double energy = 0.0;
  double hgrad = 0.0;
};

// Discrete Wigner transform
//   w(x_j, xi_m) = (dyw/2pi) sum_s f(x_j - h y_s/2) conj(f)(x_j + h y_s/2)
//                  exp(i xi_m y_s)
// on the xi-grid xi_m = -Xi + m dxi, m = 0..nxi-1, dxi = 2 Xi/nxi, with the
// dual shift grid y_s = s pi/Xi, s = -nxi/2..nxi/2-1. Values are real up to
// the unpaired s = -nxi/2 term; the imaginary residue is recorded.
struct WignerField {
  XGrid xgrid;
  double xi_max = 0.0;  // Xi
  int nxi = 0;
  std::vector<double> w;  // row-major w[j*nxi + m]
  double max_imag_residual = 0.0;

  double dxi() const { return 2.0 * xi_max / nxi; }
  double xi(int m) const { return -xi_max + m * dxi(); }
};

// Default grid: Xi = h omega_{M/2} (the maximal resolved semiclassical
// momentum), nxi = M. The xi nodes then coincide with {h omega_l}.
WignerField wigner_transform(const WaveField& psi);
WignerField wigner_transform(const WaveField& psi, double xi_max, int nxi);

// dxi-weighted xi-moments per x node: orders 0, 1, 2 approximate rho, j, and
// 2*kappa respectively.
std::vector<double> wigner_moment(const WignerField& w, int order);

// sqrt(dx dxi sum w^2); equals ||psi||^2 / sqrt(2 pi h) up to quadrature.
double l2_norm(const WignerField& w);

}  // namespace sle
