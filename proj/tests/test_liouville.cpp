#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "sle/errors.hpp"
#include "sle/grids.hpp"
#include "sle/liouville.hpp"

using namespace sle;

namespace {
constexpr double kPi = std::numbers::pi;

double total(const PhaseDensity& d) {
  double s = 0.0;
  for (double v : d.mu) s += v;
  return s;
}

PhaseDensity random_density(const PhaseGrid& g, unsigned seed) {
  PhaseDensity d = make_phase_density(g);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (double& v : d.mu) v = dist(rng);
  return d;
}
}  // namespace

TEST_CASE("upwind differences pick the windward neighbor") {
  // 3x3 grid, eta = {-1, 0, 1}: row speeds negative, zero, positive.
  PhaseGrid g = make_phase_grid(0.0, 3.0, 3, -1.0, 2.0, 3);
  PhaseDensity d = make_phase_density(g);
  // mu(j, k) = j + 10 k
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) d.mu[j * 3 + k] = j + 10.0 * k;

  // The helpers return the speed-weighted upwind term, with the side chosen
  // by the sign of the speed.
  auto dy = upwind_dy(d);
  // eta_0 = -1 < 0: forward difference (mu_{j+1} - mu_j) / dy, dy = 1
  CHECK(dy[0 * 3 + 0] == doctest::Approx(-1.0 * 1.0).epsilon(1e-14));
  CHECK(dy[2 * 3 + 0] == doctest::Approx(-1.0 * -2.0).epsilon(1e-14));  // wraps
  // eta_2 = 1 > 0: backward difference
  CHECK(dy[1 * 3 + 2] == doctest::Approx(1.0 * 1.0).epsilon(1e-14));
  CHECK(dy[0 * 3 + 2] == doctest::Approx(1.0 * -2.0).epsilon(1e-14));  // wraps
  // eta_1 = 0: no transport in y on that row
  CHECK(dy[1 * 3 + 1] == doctest::Approx(0.0).epsilon(1e-14));

  std::vector<double> force = {2.0, -3.0, 0.0};  // per row j
  auto de = upwind_deta(d, force);
  // row 0: F = 2 > 0: backward difference in eta, deta = 1
  CHECK(de[0 * 3 + 1] == doctest::Approx(2.0 * 10.0).epsilon(1e-14));
  CHECK(de[0 * 3 + 0] == doctest::Approx(2.0 * -20.0).epsilon(1e-14));  // wraps
  // row 1: F = -3 < 0: forward difference
  CHECK(de[1 * 3 + 1] == doctest::Approx(-3.0 * 10.0).epsilon(1e-14));
  CHECK(de[1 * 3 + 2] == doctest::Approx(-3.0 * -20.0).epsilon(1e-14));  // wraps
  // row 2: F = 0
  CHECK(de[2 * 3 + 1] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("one transport step evaluated by hand") {
  PhaseGrid g = make_phase_grid(0.0, 2.0, 2, 1.0, 3.0, 2);  // eta = {1, 2}
  PhaseDensity d = make_phase_density(g);
  d.mu = {1.0, 0.0, 0.0, 2.0};  // mu(0,:) = {1, 0}, mu(1,:) = {0, 2}
  std::vector<double> force = {0.5, -0.5};
  const double dt = 0.05;  // well under the stability bound 1/(2 + 0.5)

  // dy = deta = 1. Both eta positive: D_y mu = mu_j - mu_{j-1}.
  // F_0 = 0.5 > 0: D_eta mu = mu_k - mu_{k-1}; F_1 < 0: mu_{k+1} - mu_k.
  PhaseDensity expect = d;
  auto val = [&](int j, int k) { return d.mu[j * 2 + k]; };
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      double eta = g.eta(k);
      double dy_term = eta * (val(j, k) - val((j + 1) % 2, k));  // j-1 cyclic
      double f = force[j];
      double de_term =
          f > 0 ? f * (val(j, k) - val(j, (k + 1) % 2))   // k-1 cyclic
                : f * (val(j, (k + 1) % 2) - val(j, k));  // k+1 cyclic
      expect.mu[j * 2 + k] = val(j, k) - dt * (dy_term + de_term);
    }

  TransportStats stats;
  transport_step(d, force, dt, CflMode::warn, &stats);
  for (int i = 0; i < 4; ++i)
    CHECK(d.mu[i] == doctest::Approx(expect.mu[i]).epsilon(1e-14));
  CHECK(stats.violations == 0);
}

TEST_CASE("transport conserves the total mass") {
  PhaseGrid g = make_phase_grid(-2.0, 2.0, 16, -1.5, 1.5, 12);
  PhaseDensity d = random_density(g, 7u);
  std::vector<double> force(g.ny);
  for (int j = 0; j < g.ny; ++j) force[j] = std::sin(0.7 * j) - 0.2;
  double before = total(d);
  TransportStats stats;
  for (int s = 0; s < 25; ++s)
    transport_step(d, force, 0.01, CflMode::warn, &stats);
  CHECK(total(d) == doctest::Approx(before).epsilon(1e-13));
}

TEST_CASE("transport keeps nonnegative data nonnegative under the bound") {
  PhaseGrid g = make_phase_grid(-2.0, 2.0, 12, -2.0, 2.0, 10);
  PhaseDensity d = random_density(g, 11u);
  std::vector<double> force(g.ny);
  for (int j = 0; j < g.ny; ++j) force[j] = 1.5 * std::cos(0.5 * j);
  double sup_force = 0.0;
  for (double f : force) sup_force = std::max(sup_force, std::abs(f));
  double dt = 0.99 * cfl_max_dt(g, sup_force);
  TransportStats stats;
  for (int s = 0; s < 30; ++s)
    transport_step(d, force, dt, CflMode::warn, &stats);
  for (double v : d.mu) CHECK(v >= -1e-15);
  CHECK(stats.violations == 0);
}

TEST_CASE("stability bound formula on hand-checkable grids") {
  // dy = deta = 1, speeds |eta| <= 1, force bound 2: 1/(1 + 2) = 1/3
  PhaseGrid g1 = make_phase_grid(-1.0, 1.0, 2, -1.0, 1.0, 2);
  CHECK(cfl_max_dt(g1, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // The standard phase box [-2 pi, 2 pi]^2 at 128^2 with force bound 3 pi:
  // dy = deta = pi/32, max|eta| = 2 pi, so 1/(64 + 96) = 1/160, which is
  // smaller than the dt = 0.01 used by the reference runs.
  PhaseGrid g2 = make_phase_grid(-2.0 * kPi, 2.0 * kPi, 128, -2.0 * kPi,
                                 2.0 * kPi, 128);
  CHECK(cfl_max_dt(g2, 3.0 * kPi) == doctest::Approx(1.0 / 160.0).epsilon(1e-14));
  CHECK(cfl_max_dt(g2, 3.0 * kPi) < 0.01);

  // Zero speeds and zero force: no restriction.
  PhaseGrid g3 = make_phase_grid(-1.0, 1.0, 2, 0.0, 1.0, 1);
  CHECK(std::isinf(cfl_max_dt(g3, 0.0)));
}

TEST_CASE("strict mode throws past the bound, warn mode tallies") {
  PhaseGrid g = make_phase_grid(-1.0, 1.0, 8, -1.0, 1.0, 8);
  PhaseDensity d = random_density(g, 3u);
  std::vector<double> force(g.ny, 1.0);
  double dt = 1.5 * cfl_max_dt(g, 1.0);

  TransportStats stats;
  PhaseDensity d2 = d;
  transport_step(d2, force, dt, CflMode::warn, &stats);
  CHECK(stats.violations == 1);
  CHECK(stats.worst_ratio == doctest::Approx(1.5).epsilon(1e-12));

  TransportStats stats2;
  CHECK_THROWS_AS(transport_step(d, force, dt, CflMode::strict, &stats2),
                  Error);
  try {
    transport_step(d, force, dt, CflMode::strict, &stats2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::cfl);
  }
}

TEST_CASE("advection converges at first order in the mesh") {
  // Pure y-advection of sin(pi y) at per-row speeds; errors halve with dy.
  auto run_error = [](int n) {
    PhaseGrid g = make_phase_grid(-1.0, 1.0, n, 0.5, 1.5, 2);
    PhaseDensity d = make_phase_density(g);
    for (int j = 0; j < g.ny; ++j)
      for (int k = 0; k < g.neta; ++k)
        d.mu[j * g.neta + k] = 1.0 + std::sin(kPi * g.y(j));
    std::vector<double> force(g.ny, 0.0);
    const double t_end = 0.25;
    double dt = 0.4 * cfl_max_dt(g, 0.0);
    int steps = static_cast<int>(std::ceil(t_end / dt));
    dt = t_end / steps;
    TransportStats stats;
    for (int s = 0; s < steps; ++s)
      transport_step(d, force, dt, CflMode::strict, &stats);
    double err = 0.0;
    for (int j = 0; j < g.ny; ++j)
      for (int k = 0; k < g.neta; ++k) {
        double exact = 1.0 + std::sin(kPi * (g.y(j) - g.eta(k) * t_end));
        err = std::max(err, std::abs(d.mu[j * g.neta + k] - exact));
      }
    return err;
  };
  double e1 = run_error(64);
  double e2 = run_error(128);
  CHECK(e1 / e2 > 1.8);
  CHECK(e1 / e2 < 2.6);
}

TEST_CASE("two-stage transport stays conservative and consistent") {
  PhaseGrid g = make_phase_grid(-2.0, 2.0, 16, -2.0, 2.0, 16);
  PhaseDensity d = random_density(g, 19u);
  std::vector<double> f0(g.ny), f1(g.ny);
  for (int j = 0; j < g.ny; ++j) {
    f0[j] = std::sin(0.3 * j);
    f1[j] = std::sin(0.3 * j) + 0.05;
  }
  double before = total(d);
  TransportStats stats;
  transport_step_heun(d, f0, f1, 0.01, CflMode::strict, &stats);
  CHECK(total(d) == doctest::Approx(before).epsilon(1e-13));

  // With both force evaluations equal, the corrector is the average of the
  // Euler predictor and a backward evaluation; hand-build that composition.
  PhaseDensity a = random_density(g, 23u);
  PhaseDensity heun = a;
  transport_step_heun(heun, f0, f0, 0.01, CflMode::strict, &stats);

  PhaseDensity pred = a;
  transport_step(pred, f0, 0.01, CflMode::strict, &stats);
  auto dy_a = upwind_dy(a);
  auto de_a = upwind_deta(a, f0);
  auto dy_p = upwind_dy(pred);
  auto de_p = upwind_deta(pred, f0);
  for (int j = 0; j < g.ny; ++j)
    for (int k = 0; k < g.neta; ++k) {
      size_t i = static_cast<size_t>(j) * g.neta + k;
      double rate_a = dy_a[i] + de_a[i];  // speed weights already applied
      double rate_p = dy_p[i] + de_p[i];
      double expect = a.mu[i] - 0.005 * (rate_a + rate_p);
      CHECK(heun.mu[i] == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("axis advection helpers shift exactly at unit ratio") {
  PhaseGrid g = make_phase_grid(0.0, 4.0, 8, -1.0, 1.0, 4);
  PhaseDensity d = random_density(g, 31u);
  PhaseDensity orig = d;
  // speed * dt = dy exactly: every row shifts by one cell downstream
  std::vector<double> speed(g.neta, g.dy() / 0.1);
  TransportStats stats;
  advect_y(d, speed, 0.1, CflMode::strict, &stats);
  for (int j = 0; j < g.ny; ++j)
    for (int k = 0; k < g.neta; ++k)
      CHECK(d.at(j, k) == doctest::Approx(orig.at(j - 1, k)).epsilon(1e-13));

  PhaseDensity e = random_density(g, 37u);
  PhaseDensity eorig = e;
  std::vector<double> speed_j(g.ny, -g.deta() / 0.1);
  advect_eta(e, speed_j, 0.1, CflMode::strict, &stats);
  for (int j = 0; j < g.ny; ++j)
    for (int k = 0; k < g.neta; ++k)
      CHECK(e.at(j, k) == doctest::Approx(eorig.at(j, k + 1)).epsilon(1e-13));
}

TEST_CASE("non-finite forces are rejected") {
  PhaseGrid g = make_phase_grid(0.0, 1.0, 4, 0.0, 1.0, 4);
  PhaseDensity d = random_density(g, 41u);
  std::vector<double> force(g.ny, 0.0);
  force[2] = std::nan("");
  TransportStats stats;
  CHECK_THROWS_AS(transport_step(d, force, 0.01, CflMode::warn, &stats), Error);
}
