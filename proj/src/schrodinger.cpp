#include "sle/schrodinger.hpp"

#include <cmath>

#include "sle/errors.hpp"
#include "sle/spectral.hpp"

namespace sle {
namespace {

std::vector<std::complex<double>> kinetic_multiplier(const XGrid& g,
                                                     double h_dt) {
  std::vector<std::complex<double>> mult(g.m);
  for (int k = 0; k < g.m; ++k) {
    const double w = g.freq_bin(k);
    mult[k] = std::polar(1.0, -0.5 * h_dt * w * w);
  }
  return mult;
}

void apply_in_fourier(WaveField& psi,
                      const std::vector<std::complex<double>>& mult) {
  auto spec = dft(psi.psi);
  for (int k = 0; k < psi.grid.m; ++k) spec[k] *= mult[k];
  psi.psi = idft(spec);
}

}  // namespace

void kinetic_step(WaveField& psi, double dt) {
  if (!(psi.h > 0.0)) fail(ErrorCode::invalid, "kinetic_step needs h > 0");
  apply_in_fourier(psi, kinetic_multiplier(psi.grid, psi.h * dt));
}

void potential_phase_step(WaveField& psi, const EhrenfestPotential& up,
                          double dt) {
  if (up.grid.m != psi.grid.m || up.grid.a != psi.grid.a ||
      up.grid.b != psi.grid.b)
    fail(ErrorCode::invalid, "potential_phase_step grid mismatch");
  const double scale = dt / psi.h;
  for (int j = 0; j < psi.grid.m; ++j)
    psi.psi[j] *= std::polar(1.0, -up.u[j] * scale);
}

void KineticPropagator::apply(WaveField& psi, double dt) {
  const double hdt = psi.h * dt;
  if (!primed_ || m_ != psi.grid.m || length_ != psi.grid.length() ||
      hdt_ != hdt) {
    mult_ = kinetic_multiplier(psi.grid, hdt);
    m_ = psi.grid.m;
    length_ = psi.grid.length();
    hdt_ = hdt;
    primed_ = true;
  }
  apply_in_fourier(psi, mult_);
}

}  // namespace sle
