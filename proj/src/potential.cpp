#include "sle/potential.hpp"

#include <cmath>
#include <string>

#include "sle/errors.hpp"

namespace sle {
namespace {

std::vector<double> y_marginal(const PhaseDensity& mu) {
  const PhaseGrid& g = mu.grid;
  std::vector<double> marg(g.ny, 0.0);
  for (int j = 0; j < g.ny; ++j) {
    double acc = 0.0;
    for (int k = 0; k < g.neta; ++k) acc += mu.mu[j * g.neta + k];
    marg[j] = acc * g.deta();
  }
  return marg;
}

std::vector<double> position_weights(const WaveField& psi) {
  std::vector<double> w(psi.psi.size());
  for (size_t m = 0; m < w.size(); ++m) w[m] = std::norm(psi.psi[m]);
  return w;
}

}  // namespace

CouplingPotential make_quadratic_coupling(const Box& box) {
  CouplingPotential pot;
  pot.v = [](double x, double y) { return 0.5 * (x + y) * (x + y); };
  pot.dv_dx = [](double x, double y) { return x + y; };
  pot.dv_dy = [](double x, double y) { return x + y; };
  pot.box = box;
  // |x + y| is maximal at a box corner.
  double worst = 0.0;
  for (double x : {box.x_lo, box.x_hi})
    for (double y : {box.y_lo, box.y_hi})
      worst = std::max(worst, std::abs(x + y));
  pot.sup_dv_dx = worst;
  pot.sup_dv_dy = worst;
  return pot;
}

CouplingPotential make_coupling_potential(
    std::function<double(double, double)> v,
    std::function<double(double, double)> dv_dx,
    std::function<double(double, double)> dv_dy, const Box& box) {
  if (!v || !dv_dx || !dv_dy)
    fail(ErrorCode::invalid, "coupling potential needs v, dv_dx, dv_dy");
  CouplingPotential pot;
  pot.v = std::move(v);
  pot.dv_dx = std::move(dv_dx);
  pot.dv_dy = std::move(dv_dy);
  pot.box = box;

  const int samples = 33;
  const double sx = (box.x_hi - box.x_lo) / (samples - 1);
  const double sy = (box.y_hi - box.y_lo) / (samples - 1);
  const double fd_tol = 1e-6;
  for (int i = 0; i < samples; ++i) {
    for (int j = 0; j < samples; ++j) {
      const double x = box.x_lo + i * sx;
      const double y = box.y_lo + j * sy;
      const double val = pot.v(x, y);
      if (!(val >= -1e-12))
        fail(ErrorCode::invalid, "coupling potential is negative at sampled (" +
                                     std::to_string(x) + ", " +
                                     std::to_string(y) + ")");
      const double ex = 1e-5 * (1.0 + std::abs(x));
      const double ey = 1e-5 * (1.0 + std::abs(y));
      const double fdx = (pot.v(x + ex, y) - pot.v(x - ex, y)) / (2.0 * ex);
      const double fdy = (pot.v(x, y + ey) - pot.v(x, y - ey)) / (2.0 * ey);
      const double dx = pot.dv_dx(x, y);
      const double dy = pot.dv_dy(x, y);
      if (std::abs(fdx - dx) > fd_tol * (1.0 + std::abs(dx)) ||
          std::abs(fdy - dy) > fd_tol * (1.0 + std::abs(dy)))
        fail(ErrorCode::invalid,
             "coupling potential derivatives do not match finite differences");
      pot.sup_dv_dx = std::max(pot.sup_dv_dx, std::abs(dx));
      pot.sup_dv_dy = std::max(pot.sup_dv_dy, std::abs(dy));
    }
  }
  return pot;
}

EhrenfestPotential ehrenfest_potential(const CouplingPotential& pot,
                                       const PhaseDensity& mu,
                                       const XGrid& xgrid) {
  auto marg = y_marginal(mu);
  const PhaseGrid& g = mu.grid;
  EhrenfestPotential up;
  up.grid = xgrid;
  up.u.assign(xgrid.m, 0.0);
  for (int i = 0; i < xgrid.m; ++i) {
    const double x = xgrid.point(i);
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j) acc += pot.v(x, g.y(j)) * marg[j];
    up.u[i] = acc * g.dy();
  }
  return up;
}

std::vector<double> mean_force(const CouplingPotential& pot,
                               const WaveField& psi, const PhaseGrid& pgrid) {
  auto rho = position_weights(psi);
  std::vector<double> f(pgrid.ny, 0.0);
  for (int j = 0; j < pgrid.ny; ++j) {
    const double y = pgrid.y(j);
    double acc = 0.0;
    for (int m = 0; m < psi.grid.m; ++m)
      acc += pot.dv_dy(psi.grid.point(m), y) * rho[m];
    f[j] = -psi.grid.dx() * acc;
  }
  return f;
}

std::vector<double> g_integrand(const CouplingPotential& pot,
                                const WaveField& psi, const PhaseGrid& pgrid) {
  auto rho = position_weights(psi);
  std::vector<double> g(pgrid.ny, 0.0);
  for (int j = 0; j < pgrid.ny; ++j) {
    const double y = pgrid.y(j);
    double acc = 0.0;
    for (int m = 0; m < psi.grid.m; ++m)
      acc += pot.v(psi.grid.point(m), y) * rho[m];
    g[j] = psi.grid.dx() * acc;
  }
  return g;
}

PotentialTables::PotentialTables(const CouplingPotential& pot,
                                 const XGrid& xgrid, const PhaseGrid& pgrid)
    : xgrid_(xgrid), pgrid_(pgrid) {
  v_xmajor_.resize(static_cast<size_t>(xgrid.m) * pgrid.ny);
  dvdy_ymajor_.resize(static_cast<size_t>(pgrid.ny) * xgrid.m);
  for (int i = 0; i < xgrid.m; ++i) {
    const double x = xgrid.point(i);
    for (int j = 0; j < pgrid.ny; ++j) {
      const double y = pgrid.y(j);
      v_xmajor_[static_cast<size_t>(i) * pgrid.ny + j] = pot.v(x, y);
      dvdy_ymajor_[static_cast<size_t>(j) * xgrid.m + i] = pot.dv_dy(x, y);
    }
  }
}

EhrenfestPotential PotentialTables::ehrenfest_potential(
    const PhaseDensity& mu) const {
  auto marg = y_marginal(mu);
  EhrenfestPotential up;
  up.grid = xgrid_;
  up.u.assign(xgrid_.m, 0.0);
  for (int i = 0; i < xgrid_.m; ++i) {
    const double* row = &v_xmajor_[static_cast<size_t>(i) * pgrid_.ny];
    double acc = 0.0;
    for (int j = 0; j < pgrid_.ny; ++j) acc += row[j] * marg[j];
    up.u[i] = acc * pgrid_.dy();
  }
  return up;
}

std::vector<double> PotentialTables::mean_force(const WaveField& psi) const {
  auto rho = position_weights(psi);
  std::vector<double> f(pgrid_.ny, 0.0);
  for (int j = 0; j < pgrid_.ny; ++j) {
    const double* row = &dvdy_ymajor_[static_cast<size_t>(j) * xgrid_.m];
    double acc = 0.0;
    for (int m = 0; m < xgrid_.m; ++m) acc += row[m] * rho[m];
    f[j] = -psi.grid.dx() * acc;
  }
  return f;
}

}  // namespace sle
