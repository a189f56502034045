#include "sle/limit_solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "sle/errors.hpp"
#include "sle/observables.hpp"
#include "sle/spectral.hpp"

namespace sle {

std::vector<double> x_marginal(const PhaseDensity& nu) {
  const PhaseGrid& g = nu.grid;
  std::vector<double> marg(g.ny, 0.0);
  for (int i = 0; i < g.ny; ++i) {
    double acc = 0.0;
    for (int m = 0; m < g.neta; ++m) acc += nu.mu[static_cast<size_t>(i) * g.neta + m];
    marg[i] = acc * g.deta();
  }
  return marg;
}

std::vector<double> limit_force(const CouplingPotential& pot,
                                const PhaseDensity& nu,
                                const PhaseGrid& mu_grid) {
  const PhaseGrid& g = nu.grid;
  auto marg = x_marginal(nu);
  std::vector<double> f(mu_grid.ny, 0.0);
  for (int j = 0; j < mu_grid.ny; ++j) {
    const double y = mu_grid.y(j);
    double acc = 0.0;
    for (int i = 0; i < g.ny; ++i) acc += pot.dv_dy(g.y(i), y) * marg[i];
    f[j] = -g.dy() * acc;
  }
  return f;
}

LimitSolver::LimitSolver(LimitState init, const CouplingPotential& pot,
                         CflMode cfl_mode)
    : state_(std::move(init)), pot_(pot), cfl_mode_(cfl_mode) {
  xi_speeds_.resize(state_.nu.grid.neta);
  for (int m = 0; m < state_.nu.grid.neta; ++m)
    xi_speeds_[m] = state_.nu.grid.eta(m);
}

void LimitSolver::step(double dt) {
  const PhaseGrid& ng = state_.nu.grid;
  // substep 1: free streaming of nu, transport of mu with the nu-force
  auto f0 = limit_force(pot_, state_.nu, state_.mu.grid);
  advect_y(state_.nu, xi_speeds_, dt, cfl_mode_, &tstats_);
  transport_step(state_.mu, f0, dt, cfl_mode_, &tstats_);
  // substep 2: xi-advection of nu by -d_x Upsilon0 from the updated mu
  const PhaseGrid& mg = state_.mu.grid;
  std::vector<double> mu_marg(mg.ny, 0.0);
  for (int j = 0; j < mg.ny; ++j) {
    double acc = 0.0;
    for (int k = 0; k < mg.neta; ++k)
      acc += state_.mu.mu[static_cast<size_t>(j) * mg.neta + k];
    mu_marg[j] = acc * mg.deta();
  }
  std::vector<double> xi_force(ng.ny, 0.0);
  for (int i = 0; i < ng.ny; ++i) {
    const double x = ng.y(i);
    double acc = 0.0;
    for (int j = 0; j < mg.ny; ++j) acc += pot_.dv_dx(x, mg.y(j)) * mu_marg[j];
    xi_force[i] = -mg.dy() * acc;
  }
  advect_eta(state_.nu, xi_force, dt, cfl_mode_, &tstats_);
  state_.t += dt;
}

double LimitSolver::max_dt() const {
  const PhaseGrid& ng = state_.nu.grid;
  const PhaseGrid& mg = state_.mu.grid;
  const double stream = ng.max_abs_eta() / ng.dy();
  const double kick = pot_.sup_dv_dx / ng.deta();
  const double mu_rate =
      mg.max_abs_eta() / mg.dy() + pot_.sup_dv_dy / mg.deta();
  double worst = std::max({stream, kick, mu_rate});
  if (worst == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / worst;
}

namespace {

// Full-band Wigner rows averaged over blocks of stride consecutive grid
// points (centered on every stride-th node, periodic wrap). Same construction
// as wigner_transform with its default band [-h w_{M/2}, h w_{M/2}) and M xi
// points, but only the block-averaged rows are materialized, which keeps the
// memory footprint proportional to the coarse grid. The x-average matters:
// the pointwise transform of a structured wave carries interference fringes
// that oscillate in x on the scale of the wave, and a single sampled row
// would alias them onto the coarse grid; the block mean suppresses them.
struct WignerRows {
  double xi_max = 0.0;
  int nxi = 0;
  std::vector<double> w;  // row-major w[i*nxi + f]
  double dxi() const { return 2.0 * xi_max / nxi; }
  double xi(int f) const { return -xi_max + f * dxi(); }
};

WignerRows strided_wigner_rows(const WaveField& psi, int stride) {
  const int m = psi.grid.m;
  const int rows = m / stride;
  const int n = m;  // xi count = mode count, so the band has no wrap-around
  const int half = n / 2;
  const double xi_max = psi.h * psi.grid.freq(m / 2);
  const double dyw = std::numbers::pi / xi_max;

  auto spec = dft(psi.psi);
  const double inv_stride = 1.0 / stride;
  auto block_index = [&](int i, int s_off) {
    int j = i * stride - stride / 2 + s_off;
    j %= m;
    if (j < 0) j += m;
    return static_cast<size_t>(j);
  };
  std::vector<std::complex<double>> g(static_cast<size_t>(rows) * (half + 1));
  for (int i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (int s_off = 0; s_off < stride; ++s_off)
      acc += std::norm(psi.psi[block_index(i, s_off)]);
    g[static_cast<size_t>(i) * (half + 1)] = acc * inv_stride;
  }
  for (int s = 1; s <= half; ++s) {
    const double delta = 0.5 * psi.h * s * dyw;
    auto minus = shifted_samples(psi.grid, spec, -delta);
    auto plus = shifted_samples(psi.grid, spec, delta);
    for (int i = 0; i < rows; ++i) {
      std::complex<double> acc = 0.0;
      for (int s_off = 0; s_off < stride; ++s_off) {
        const size_t j = block_index(i, s_off);
        acc += minus[j] * std::conj(plus[j]);
      }
      g[static_cast<size_t>(i) * (half + 1) + s] = acc * inv_stride;
    }
  }

  WignerRows out;
  out.xi_max = xi_max;
  out.nxi = n;
  out.w.assign(static_cast<size_t>(rows) * n, 0.0);
  const double prefactor = dyw / (2.0 * std::numbers::pi);
  std::vector<std::complex<double>> buf(n);
  for (int i = 0; i < rows; ++i) {
    const std::complex<double>* row = &g[static_cast<size_t>(i) * (half + 1)];
    for (int t = 0; t < n; ++t) {
      const int s = t < half ? t : t - n;
      buf[t] = s >= 0 ? row[s] : std::conj(row[-s]);
    }
    auto f = idft(buf);
    double* wr = &out.w[static_cast<size_t>(i) * n];
    for (int mm = 0; mm < n; ++mm)
      wr[mm] =
          (prefactor * static_cast<double>(n) * f[(mm + half) % n]).real();
  }
  return out;
}

}  // namespace

PhaseDensity nu_from_wigner(const WaveField& psi, const PhaseGrid& limit_grid) {
  if (limit_grid.y_lo != psi.grid.a || limit_grid.y_hi != psi.grid.b)
    fail(ErrorCode::invalid, "limit grid x-interval must match the wave grid");
  if (psi.grid.m % limit_grid.ny != 0)
    fail(ErrorCode::invalid,
         "limit grid x-count must divide the wave grid point count");
  if (limit_grid.eta_lo != -limit_grid.eta_hi || !(limit_grid.eta_hi > 0.0))
    fail(ErrorCode::invalid, "limit grid xi-interval must be symmetric");
  const int stride = psi.grid.m / limit_grid.ny;
  // Bin the full-band Wigner rows into the coarse xi cells: each cell
  // receives the integral of the fine transform over its xi interval. Unlike
  // point sampling, the cell masses stay well defined as the transform
  // sharpens with decreasing h. Content outside the coarse window is dropped.
  WignerRows fine = strided_wigner_rows(psi, stride);
  PhaseDensity nu = make_phase_density(limit_grid);
  const double dxi_c = limit_grid.deta();
  const double scale = fine.dxi() / dxi_c;
  for (int i = 0; i < limit_grid.ny; ++i) {
    const double* wr = &fine.w[static_cast<size_t>(i) * fine.nxi];
    double* nrow = &nu.mu[static_cast<size_t>(i) * limit_grid.neta];
    for (int f = 0; f < fine.nxi; ++f) {
      const long cell =
          std::lround((fine.xi(f) - limit_grid.eta_lo) / dxi_c);
      if (cell < 0 || cell >= limit_grid.neta) continue;
      nrow[cell] += wr[f];
    }
    for (int mm = 0; mm < limit_grid.neta; ++mm)
      nrow[mm] = std::max(0.0, nrow[mm] * scale);
  }
  const double mass = phase_mass(nu);
  if (!(mass > 0.0))
    fail(ErrorCode::numeric, "clipped Wigner data has no positive part");
  for (auto& v : nu.mu) v /= mass;
  return nu;
}

}  // namespace sle
