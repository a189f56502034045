#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace sle {

// Periodic x-grid: x_j = a + j dx, j = 0..m-1, dx = (b-a)/m, m even.
// Fourier modes l = -m/2 .. m/2-1 with omega_l = 2 pi l / (b-a); FFT bin k
// holds mode l = k for k < m/2 and l = k - m otherwise.
struct XGrid {
  double a = 0.0;
  double b = 1.0;
  int m = 0;

  double length() const { return b - a; }
  double dx() const { return length() / m; }
  double point(int j) const { return a + j * dx(); }
  int mode(int k) const { return k < m / 2 ? k : k - m; }
  double freq(int l) const { return 2.0 * std::numbers::pi * l / length(); }
  double freq_bin(int k) const { return freq(mode(k)); }
};

XGrid make_xgrid(double a, double b, int m);

// Periodic phase-space grid: y_j = y_lo + j dy, eta_k = eta_lo + k deta.
// Both directions are cyclic. Also reused by the classical-limit solver with
// (y, eta) standing in for (x, xi).
struct PhaseGrid {
  double y_lo = 0.0, y_hi = 1.0;
  double eta_lo = 0.0, eta_hi = 1.0;
  int ny = 0, neta = 0;

  double dy() const { return (y_hi - y_lo) / ny; }
  double deta() const { return (eta_hi - eta_lo) / neta; }
  double y(int j) const { return y_lo + j * dy(); }
  double eta(int k) const { return eta_lo + k * deta(); }
  int wrap_j(int j) const { return ((j % ny) + ny) % ny; }
  int wrap_k(int k) const { return ((k % neta) + neta) % neta; }
  double max_abs_eta() const;
  int cells() const { return ny * neta; }
};

PhaseGrid make_phase_grid(double y_lo, double y_hi, int ny, double eta_lo,
                          double eta_hi, int neta);

// Wave function samples on an XGrid with the semiclassical parameter attached.
struct WaveField {
  XGrid grid;
  double h = 0.0;
  std::vector<std::complex<double>> psi;
};

WaveField make_wave_field(const XGrid& grid, double h);

// Non-negative phase-space density samples, row-major mu[j*neta + k],
// cyclic in both indices through at().
struct PhaseDensity {
  PhaseGrid grid;
  std::vector<double> mu;

  double& at(int j, int k) {
    return mu[grid.wrap_j(j) * grid.neta + grid.wrap_k(k)];
  }
  double at(int j, int k) const {
    return mu[grid.wrap_j(j) * grid.neta + grid.wrap_k(k)];
  }
};

PhaseDensity make_phase_density(const PhaseGrid& grid);

// sqrt(dx sum_j |psi_j|^2)
double l2_norm(const WaveField& f);
// sqrt(dy deta sum_jk mu_jk^2)
double l2_norm(const PhaseDensity& f);
// dy deta sum_jk mu_jk
double phase_mass(const PhaseDensity& f);

}  // namespace sle
