#include "sle/initial_data.hpp"

#include <cmath>

#include "sle/errors.hpp"

namespace sle {
namespace {

void normalize(WaveField& f) {
  const double n = l2_norm(f);
  if (!(n > 0.0)) fail(ErrorCode::numeric, "initial wave function has zero norm");
  for (auto& v : f.psi) v /= n;
}

}  // namespace

WaveField make_psi_wkb_cosh(const XGrid& grid, double h) {
  WaveField f = make_wave_field(grid, h);
  for (int j = 0; j < grid.m; ++j) {
    const double u = grid.point(j) + 0.2;
    const double amp = std::exp(-25.0 * u * u);
    const double phase = -std::log(2.0 * std::cosh(5.0 * u)) / (5.0 * h);
    f.psi[j] = std::polar(amp, phase);
  }
  normalize(f);
  return f;
}

WaveField make_psi_wkb_sine(const XGrid& grid, double h) {
  WaveField f = make_wave_field(grid, h);
  for (int j = 0; j < grid.m; ++j) {
    const double x = grid.point(j);
    const double amp = std::exp(-5.0 * (x + 0.1) * (x + 0.1));
    f.psi[j] = std::polar(amp, std::sin(x) / h);
  }
  normalize(f);
  return f;
}

PhaseDensity make_mu_bump(const PhaseGrid& grid) {
  PhaseDensity f = make_phase_density(grid);
  auto bump = [](double u) {
    return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
  };
  for (int j = 0; j < grid.ny; ++j)
    for (int k = 0; k < grid.neta; ++k)
      f.mu[static_cast<size_t>(j) * grid.neta + k] =
          bump(grid.y(j)) * bump(grid.eta(k));
  const double mass = phase_mass(f);
  if (!(mass > 0.0))
    fail(ErrorCode::invalid,
         "bump initial density vanishes on this grid; enlarge the resolution");
  for (auto& v : f.mu) v /= mass;
  return f;
}

PhaseDensity make_mu_point_mass(const PhaseGrid& grid, double y0, double eta0) {
  PhaseDensity f = make_phase_density(grid);
  const int j0 = grid.wrap_j(static_cast<int>(std::lround((y0 - grid.y_lo) / grid.dy())));
  const int k0 = grid.wrap_k(static_cast<int>(std::lround((eta0 - grid.eta_lo) / grid.deta())));
  f.mu[static_cast<size_t>(j0) * grid.neta + k0] = 1.0 / (grid.dy() * grid.deta());
  return f;
}

}  // namespace sle
