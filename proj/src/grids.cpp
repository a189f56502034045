#include "sle/grids.hpp"

#include <cmath>
#include <string>

#include "sle/errors.hpp"

namespace sle {

XGrid make_xgrid(double a, double b, int m) {
  if (!(a < b)) fail(ErrorCode::invalid, "x-grid needs a < b");
  if (m <= 0 || m % 2 != 0)
    fail(ErrorCode::invalid,
         "x-grid point count must be positive and even, got " +
             std::to_string(m));
  return XGrid{a, b, m};
}

double PhaseGrid::max_abs_eta() const {
  double worst = 0.0;
  for (int k = 0; k < neta; ++k) worst = std::max(worst, std::abs(eta(k)));
  return worst;
}

PhaseGrid make_phase_grid(double y_lo, double y_hi, int ny, double eta_lo,
                          double eta_hi, int neta) {
  if (!(y_lo < y_hi) || !(eta_lo < eta_hi))
    fail(ErrorCode::invalid, "phase grid intervals must have positive length");
  if (ny < 1 || neta < 1)
    fail(ErrorCode::invalid, "phase grid needs at least one cell per direction");
  return PhaseGrid{y_lo, y_hi, eta_lo, eta_hi, ny, neta};
}

WaveField make_wave_field(const XGrid& grid, double h) {
  if (!(h > 0.0)) fail(ErrorCode::invalid, "semiclassical parameter h must be > 0");
  WaveField f;
  f.grid = grid;
  f.h = h;
  f.psi.assign(grid.m, {0.0, 0.0});
  return f;
}

PhaseDensity make_phase_density(const PhaseGrid& grid) {
  PhaseDensity f;
  f.grid = grid;
  f.mu.assign(static_cast<size_t>(grid.ny) * grid.neta, 0.0);
  return f;
}

double l2_norm(const WaveField& f) {
  double acc = 0.0;
  for (const auto& v : f.psi) acc += std::norm(v);
  return std::sqrt(f.grid.dx() * acc);
}

double l2_norm(const PhaseDensity& f) {
  double acc = 0.0;
  for (double v : f.mu) acc += v * v;
  return std::sqrt(f.grid.dy() * f.grid.deta() * acc);
}

double phase_mass(const PhaseDensity& f) {
  double acc = 0.0;
  for (double v : f.mu) acc += v;
  return f.grid.dy() * f.grid.deta() * acc;
}

}  // namespace sle
