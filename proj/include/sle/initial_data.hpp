#pragma once

#include "sle/grids.hpp"

namespace sle {

// WKB packet exp(-25(x+0.2)^2) exp(-i ln(2 cosh(5(x+0.2))) / (5h)),
// normalized to ||psi|| = 1.
WaveField make_psi_wkb_cosh(const XGrid& grid, double h);

// WKB packet exp(-5(x+0.1)^2) exp(i sin(x)/h), normalized.
WaveField make_psi_wkb_sine(const XGrid& grid, double h);

// Compactly supported bump exp(-1/(1-y^2)) exp(-1/(1-eta^2)) on |y|,|eta| < 1,
// zero outside, scaled to phase mass 1.
PhaseDensity make_mu_bump(const PhaseGrid& grid);

// Unit mass in the single cell nearest (y0, eta0).
PhaseDensity make_mu_point_mass(const PhaseGrid& grid, double y0, double eta0);

}  // namespace sle
