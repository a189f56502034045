#include <cmath>
#include <complex>
#include <numbers>

#include "sle/errors.hpp"
#include "sle/observables.hpp"
#include "sle/spectral.hpp"

namespace sle {

WignerField wigner_transform(const WaveField& psi) {
  const double xi_max = psi.h * psi.grid.freq(psi.grid.m / 2);
  return wigner_transform(psi, xi_max, psi.grid.m);
}

WignerField wigner_transform(const WaveField& psi, double xi_max, int nxi) {
  if (!(xi_max > 0.0)) fail(ErrorCode::invalid, "wigner_transform needs Xi > 0");
  if (nxi < 2 || nxi % 2 != 0)
    fail(ErrorCode::invalid, "wigner_transform needs an even xi count >= 2");
  const int m = psi.grid.m;
  const int n = nxi;
  const int half = n / 2;
  const double dyw = std::numbers::pi / xi_max;  // dual shift spacing

  WignerField out;
  out.xgrid = psi.grid;
  out.xi_max = xi_max;
  out.nxi = n;
  out.w.assign(static_cast<size_t>(m) * n, 0.0);

  // g_j(y_s) for s >= 0 only; g_j(-y_s) = conj(g_j(y_s)).
  auto spec = dft(psi.psi);
  std::vector<std::complex<double>> g(static_cast<size_t>(m) * (half + 1));
  for (int j = 0; j < m; ++j)
    g[static_cast<size_t>(j) * (half + 1)] = std::norm(psi.psi[j]);
  for (int s = 1; s <= half; ++s) {
    const double delta = 0.5 * psi.h * s * dyw;
    auto minus = shifted_samples(psi.grid, spec, -delta);
    auto plus = shifted_samples(psi.grid, spec, delta);
    for (int j = 0; j < m; ++j)
      g[static_cast<size_t>(j) * (half + 1) + s] =
          minus[j] * std::conj(plus[j]);
  }

  const double prefactor = dyw / (2.0 * std::numbers::pi);
  std::vector<std::complex<double>> buf(n);
  double worst_imag = 0.0;
  for (int j = 0; j < m; ++j) {
    const std::complex<double>* row = &g[static_cast<size_t>(j) * (half + 1)];
    for (int t = 0; t < n; ++t) {
      const int s = t < half ? t : t - n;
      buf[t] = s >= 0 ? row[s] : std::conj(row[-s]);
    }
    auto f = idft(buf);
    double* wr = &out.w[static_cast<size_t>(j) * n];
    for (int mm = 0; mm < n; ++mm) {
      const std::complex<double> val =
          prefactor * static_cast<double>(n) * f[(mm + half) % n];
      wr[mm] = val.real();
      worst_imag = std::max(worst_imag, std::abs(val.imag()));
    }
  }
  out.max_imag_residual = worst_imag;
  return out;
}

std::vector<double> wigner_moment(const WignerField& w, int order) {
  if (order < 0 || order > 2)
    fail(ErrorCode::invalid, "wigner_moment supports orders 0..2");
  const int m = w.xgrid.m;
  std::vector<double> out(m, 0.0);
  for (int j = 0; j < m; ++j) {
    const double* row = &w.w[static_cast<size_t>(j) * w.nxi];
    double acc = 0.0;
    for (int mm = 0; mm < w.nxi; ++mm) {
      double weight = 1.0;
      const double xi = w.xi(mm);
      for (int p = 0; p < order; ++p) weight *= xi;
      acc += weight * row[mm];
    }
    out[j] = acc * w.dxi();
  }
  return out;
}

double l2_norm(const WignerField& w) {
  double acc = 0.0;
  for (double v : w.w) acc += v * v;
  return std::sqrt(w.xgrid.dx() * w.dxi() * acc);
}

}  // namespace sle
