#include "sle/observables.hpp"

#include <cmath>

#include "sle/errors.hpp"
#include "sle/spectral.hpp"

namespace sle {

std::vector<double> position_density(const WaveField& psi) {
  std::vector<double> rho(psi.psi.size());
  for (size_t j = 0; j < rho.size(); ++j) rho[j] = std::norm(psi.psi[j]);
  return rho;
}

std::vector<double> current_density(const WaveField& psi) {
  auto d = spectral_derivative(psi.grid, psi.psi);
  std::vector<double> cur(psi.psi.size());
  for (size_t j = 0; j < cur.size(); ++j)
    cur[j] = psi.h * std::imag(std::conj(psi.psi[j]) * d[j]);
  return cur;
}

std::vector<double> kinetic_density(const WaveField& psi) {
  auto d = spectral_derivative(psi.grid, psi.psi);
  std::vector<double> kap(psi.psi.size());
  for (size_t j = 0; j < kap.size(); ++j)
    kap[j] = 0.5 * psi.h * psi.h * std::norm(d[j]);
  return kap;
}

double hgrad_norm(const WaveField& psi) {
  auto d = spectral_derivative(psi.grid, psi.psi);
  double acc = 0.0;
  for (const auto& v : d) acc += std::norm(v);
  return psi.h * std::sqrt(psi.grid.dx() * acc);
}

double discrete_energy(const WaveField& psi, const PhaseDensity& mu,
                       const EhrenfestPotential& up) {
  if (up.grid.m != psi.grid.m)
    fail(ErrorCode::invalid, "discrete_energy grid mismatch");
  auto kap = kinetic_density(psi);
  double kinetic = 0.0, mean_field = 0.0;
  for (int j = 0; j < psi.grid.m; ++j) {
    kinetic += kap[j];
    mean_field += up.u[j] * std::norm(psi.psi[j]);
  }
  double classical = 0.0;
  const PhaseGrid& g = mu.grid;
  for (int j = 0; j < g.ny; ++j)
    for (int k = 0; k < g.neta; ++k) {
      const double eta = g.eta(k);
      classical += 0.5 * eta * eta * mu.mu[static_cast<size_t>(j) * g.neta + k];
    }
  return psi.grid.dx() * (kinetic + mean_field) +
         g.dy() * g.deta() * classical;
}

}  // namespace sle
