#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sle/errors.hpp"
#include "sle/grids.hpp"
#include "sle/initial_data.hpp"
#include "sle/potential.hpp"

using namespace sle;

namespace {
constexpr double kPi = std::numbers::pi;

Box demo_box() { return Box{-kPi, kPi, -2.0 * kPi, 2.0 * kPi}; }
}  // namespace

TEST_CASE("quadratic coupling values and derivatives") {
  auto pot = make_quadratic_coupling(demo_box());
  CHECK(pot.v(1.0, 2.0) == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(pot.v(-1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(pot.dv_dx(0.5, 0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(pot.dv_dy(0.5, 0.25) == doctest::Approx(0.75).epsilon(1e-15));
  // sup over the box of |x + y| = pi + 2 pi
  CHECK(pot.sup_dv_dx == doctest::Approx(3.0 * kPi).epsilon(1e-14));
  CHECK(pot.sup_dv_dy == doctest::Approx(3.0 * kPi).epsilon(1e-14));
}

TEST_CASE("custom potential validation accepts a consistent pair") {
  auto pot = make_coupling_potential(
      [](double x, double y) { return std::cosh(0.3 * (x - y)) - 1.0; },
      [](double x, double y) { return 0.3 * std::sinh(0.3 * (x - y)); },
      [](double x, double y) { return -0.3 * std::sinh(0.3 * (x - y)); },
      demo_box());
  CHECK(pot.sup_dv_dy > 0.0);
}

TEST_CASE("custom potential validation rejects a wrong derivative") {
  CHECK_THROWS_AS(make_coupling_potential(
                      [](double x, double y) { return 0.5 * (x + y) * (x + y); },
                      [](double x, double y) { return x + y; },
                      [](double x, double y) { return x - y; },  // wrong
                      demo_box()),
                  Error);
}

TEST_CASE("custom potential validation rejects negative values") {
  CHECK_THROWS_AS(
      make_coupling_potential([](double, double) { return -1.0; },
                              [](double, double) { return 0.0; },
                              [](double, double) { return 0.0; }, demo_box()),
      Error);
}

TEST_CASE("mean field potential by direct quadrature on a tiny grid") {
  auto pot = make_quadratic_coupling(demo_box());
  PhaseGrid pg = make_phase_grid(0.0, 2.0, 2, -1.0, 1.0, 2);
  PhaseDensity mu = make_phase_density(pg);
  mu.mu = {1.0, 0.5, 2.0, 0.25};  // rows y = {0, 1}, columns eta = {-1, 0}
  XGrid xg = make_xgrid(-1.0, 1.0, 4);

  EhrenfestPotential up = ehrenfest_potential(pot, mu, xg);
  const double w = pg.dy() * pg.deta();  // 1.0 * 1.0
  for (int i = 0; i < xg.m; ++i) {
    double x = xg.point(i);
    double expect = w * (0.5 * (x + 0.0) * (x + 0.0) * (1.0 + 0.5) +
                         0.5 * (x + 1.0) * (x + 1.0) * (2.0 + 0.25));
    CHECK(up.u[i] == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("mean force reduces to first moments for the quadratic coupling") {
  // F_j = -dx sum_m (x_m + y_j) |psi_m|^2 = -(m1 + y_j m0)
  auto pot = make_quadratic_coupling(demo_box());
  XGrid xg = make_xgrid(-kPi, kPi, 128);
  WaveField psi = make_psi_wkb_cosh(xg, 1.0 / 16.0);
  PhaseGrid pg = make_phase_grid(-2.0 * kPi, 2.0 * kPi, 8, -1.0, 1.0, 4);

  double m0 = 0.0, m1 = 0.0;
  for (int m = 0; m < xg.m; ++m) {
    double w = std::norm(psi.psi[m]) * xg.dx();
    m0 += w;
    m1 += xg.point(m) * w;
  }
  auto force = mean_force(pot, psi, pg);
  REQUIRE(static_cast<int>(force.size()) == pg.ny);
  for (int j = 0; j < pg.ny; ++j)
    CHECK(force[j] == doctest::Approx(-(m1 + pg.y(j) * m0)).epsilon(1e-12));
}

TEST_CASE("coupling weight by direct quadrature") {
  // G_j = dx sum_m V(x_m, y_j) |psi_m|^2
  auto pot = make_quadratic_coupling(demo_box());
  XGrid xg = make_xgrid(-1.0, 1.0, 8);
  WaveField psi = make_wave_field(xg, 0.5);
  for (int m = 0; m < xg.m; ++m) psi.psi[m] = 0.5 + 0.1 * m;
  PhaseGrid pg = make_phase_grid(0.0, 1.0, 2, 0.0, 1.0, 2);

  auto g = g_integrand(pot, psi, pg);
  for (int j = 0; j < pg.ny; ++j) {
    double expect = 0.0;
    for (int m = 0; m < xg.m; ++m)
      expect += pot.v(xg.point(m), pg.y(j)) * std::norm(psi.psi[m]) * xg.dx();
    CHECK(g[j] == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("precomputed tables match the direct evaluations") {
  auto pot = make_quadratic_coupling(demo_box());
  XGrid xg = make_xgrid(-kPi, kPi, 256);
  PhaseGrid pg = make_phase_grid(-2.0 * kPi, 2.0 * kPi, 32, -2.0 * kPi,
                                 2.0 * kPi, 32);
  WaveField psi = make_psi_wkb_cosh(xg, 1.0 / 32.0);
  PhaseDensity mu = make_mu_bump(pg);

  PotentialTables tables(pot, xg, pg);

  EhrenfestPotential direct_u = ehrenfest_potential(pot, mu, xg);
  EhrenfestPotential table_u = tables.ehrenfest_potential(mu);
  for (int i = 0; i < xg.m; ++i)
    CHECK(table_u.u[i] ==
          doctest::Approx(direct_u.u[i]).epsilon(1e-12).scale(1.0));

  auto direct_f = mean_force(pot, psi, pg);
  auto table_f = tables.mean_force(psi);
  for (int j = 0; j < pg.ny; ++j)
    CHECK(table_f[j] ==
          doctest::Approx(direct_f[j]).epsilon(1e-12).scale(1.0));
}
