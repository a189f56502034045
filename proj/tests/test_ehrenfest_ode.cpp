#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "sle/ehrenfest_ode.hpp"
#include "sle/grids.hpp"
#include "sle/initial_data.hpp"
#include "sle/potential.hpp"
#include "sle/schrodinger.hpp"

using namespace sle;

namespace {
constexpr double kPi = std::numbers::pi;

CouplingPotential quad_pot() {
  return make_quadratic_coupling(Box{-kPi, kPi, -2.0 * kPi, 2.0 * kPi});
}

// Uniform-modulus state: |psi|^2 = 1/(2 pi), so the quadratic mean force on
// the particle is exactly -(y + c) with c = <x> = -pi/M, and the kinetic
// flight leaves the modulus (hence the force) untouched.
WaveField uniform_state(const XGrid& g, double h) {
  WaveField f = make_wave_field(g, h);
  const double amp = 1.0 / std::sqrt(2.0 * kPi);
  for (int j = 0; j < g.m; ++j) f.psi[j] = amp;
  return f;
}
}  // namespace

TEST_CASE("particle force by direct quadrature") {
  auto pot = quad_pot();
  XGrid g = make_xgrid(-kPi, kPi, 64);
  WaveField psi = make_psi_wkb_cosh(g, 1.0 / 16.0);
  const double y = 0.7;
  double expect = 0.0;
  for (int m = 0; m < g.m; ++m)
    expect -= g.dx() * pot.dv_dy(g.point(m), y) * std::norm(psi.psi[m]);
  CHECK(particle_force(pot, psi, y) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("zero potential leaves a straight drift") {
  auto zero_pot = make_coupling_potential(
      [](double, double) { return 0.0; }, [](double, double) { return 0.0; },
      [](double, double) { return 0.0; }, Box{-kPi, kPi, -2.0, 2.0});
  XGrid g = make_xgrid(-kPi, kPi, 64);
  OdeState st{uniform_state(g, 0.1), 0.3, -0.45, 0.0};
  const double dt = 0.01;
  for (int i = 0; i < 25; ++i) ode_step(st, zero_pot, dt);
  CHECK(st.y == doctest::Approx(0.3 - 0.45 * 25 * dt).epsilon(1e-13));
  CHECK(st.eta == doctest::Approx(-0.45).epsilon(1e-15));
  CHECK(st.t == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("x-independent potential gives an exactly harmonic particle") {
  // V = (1 + y^2)/2 depends only on y, so the force is -y times the (unit,
  // conserved) wave mass no matter how psi evolves, and the particle is a
  // plain harmonic oscillator integrated by symplectic Euler.
  auto pot = make_coupling_potential(
      [](double, double y) { return 0.5 * (1.0 + y * y); },
      [](double, double) { return 0.0; }, [](double, double y) { return y; },
      Box{-kPi, kPi, -2.0, 2.0});
  XGrid g = make_xgrid(-kPi, kPi, 128);
  const double h = 0.1;

  auto solve = [&](double dt, double t_end) {
    OdeState st{make_psi_wkb_cosh(g, h), 1.0, 0.0, 0.0};
    int n = static_cast<int>(std::lround(t_end / dt));
    for (int i = 0; i < n; ++i) ode_step(st, pot, dt);
    return st;
  };
  const double t_end = 1.0;
  double y_exact = std::cos(t_end);
  double eta_exact = -std::sin(t_end);

  OdeState coarse = solve(0.01, t_end);
  OdeState fine = solve(0.005, t_end);
  double e_coarse = std::hypot(coarse.y - y_exact, coarse.eta - eta_exact);
  double e_fine = std::hypot(fine.y - y_exact, fine.eta - eta_exact);
  CHECK(e_coarse < 0.02);
  double ratio = e_coarse / e_fine;
  CHECK(ratio > 1.7);
  CHECK(ratio < 2.4);
}

TEST_CASE("force uses the flown wave and momentum updates before position") {
  auto pot = quad_pot();
  XGrid g = make_xgrid(-kPi, kPi, 64);
  const double h = 0.1, dt = 0.02;
  OdeState st{make_psi_wkb_cosh(g, h), 0.5, 0.2, 0.0};
  // Boost by a unit mean momentum (integer mode p/h = 10) so the kinetic
  // flight visibly moves the density within one step.
  for (int j = 0; j < g.m; ++j)
    st.psi.psi[j] *= std::polar(1.0, g.point(j) / h);
  WaveField flown = st.psi;
  kinetic_step(flown, dt);
  double f = particle_force(pot, flown, st.y);
  // The flight moves the density, so this genuinely pins which wave feeds
  // the force.
  REQUIRE(std::abs(f - particle_force(pot, st.psi, st.y)) > 1e-6);
  double eta_expect = 0.2 + dt * f;
  double y_expect = 0.5 + dt * eta_expect;  // drifts with the new momentum
  ode_step(st, pot, dt);
  CHECK(st.eta == doctest::Approx(eta_expect).epsilon(1e-14));
  CHECK(st.y == doctest::Approx(y_expect).epsilon(1e-14));
}

TEST_CASE("uniform wave under an x-independent potential stays uniform") {
  // The phase rotation is then a global factor and the kinetic flight acts on
  // the zero mode only, so each sample keeps its modulus exactly.
  auto pot = make_coupling_potential(
      [](double, double y) { return 0.5 * (1.0 + y * y); },
      [](double, double) { return 0.0; }, [](double, double y) { return y; },
      Box{-kPi, kPi, -2.0, 2.0});
  XGrid g = make_xgrid(-kPi, kPi, 64);
  OdeState st{uniform_state(g, 0.1), 1.0, 0.0, 0.0};
  for (int i = 0; i < 10; ++i) ode_step(st, pot, 0.02);
  const double amp2 = 1.0 / (2.0 * kPi);
  for (const auto& v : st.psi.psi)
    CHECK(std::norm(v) == doctest::Approx(amp2).epsilon(1e-13));
}

TEST_CASE("wave mass is conserved under the coupled update") {
  auto pot = quad_pot();
  XGrid g = make_xgrid(-kPi, kPi, 128);
  OdeState st{make_psi_wkb_cosh(g, 1.0 / 16.0), 1.0, 0.0, 0.0};
  for (int i = 0; i < 20; ++i) ode_step(st, pot, 0.01);
  CHECK(l2_norm(st.psi) == doctest::Approx(1.0).epsilon(1e-12));
}
