#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sle/errors.hpp"
#include "sle/grids.hpp"
#include "sle/spectral.hpp"

using namespace sle;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("x grid geometry") {
  XGrid g = make_xgrid(-kPi, kPi, 8);
  CHECK(g.length() == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(g.dx() == doctest::Approx(kPi / 4.0).epsilon(1e-15));
  CHECK(g.point(0) == doctest::Approx(-kPi).epsilon(1e-15));
  CHECK(g.point(4) == doctest::Approx(0.0).epsilon(1e-15));

  // FFT bin ordering: bins 0..m/2-1 are modes 0..m/2-1, bins m/2..m-1 are
  // modes -m/2..-1.
  CHECK(g.mode(0) == 0);
  CHECK(g.mode(3) == 3);
  CHECK(g.mode(4) == -4);
  CHECK(g.mode(7) == -1);
  CHECK(g.freq(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.freq(-4) == doctest::Approx(-4.0).epsilon(1e-15));
  CHECK(g.freq_bin(7) == doctest::Approx(-1.0).epsilon(1e-15));

  XGrid g2 = make_xgrid(0.0, 1.0, 4);
  CHECK(g2.freq(1) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
}

TEST_CASE("x grid validation") {
  CHECK_THROWS_AS(make_xgrid(1.0, 0.0, 8), Error);
  CHECK_THROWS_AS(make_xgrid(0.0, 1.0, 7), Error);
  CHECK_THROWS_AS(make_xgrid(0.0, 1.0, 0), Error);
  try {
    make_xgrid(0.0, 1.0, 7);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid);
  }
}

TEST_CASE("phase grid geometry and wrapping") {
  PhaseGrid g = make_phase_grid(-2.0, 2.0, 4, -1.0, 1.0, 2);
  CHECK(g.dy() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.deta() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.y(0) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(g.y(3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.eta(1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g.wrap_j(-1) == 3);
  CHECK(g.wrap_j(4) == 0);
  CHECK(g.wrap_k(-1) == 1);
  CHECK(g.wrap_k(2) == 0);
  CHECK(g.max_abs_eta() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.cells() == 8);
}

TEST_CASE("wave field norm against the direct sum") {
  XGrid g = make_xgrid(0.0, 2.0, 4);
  WaveField f = make_wave_field(g, 0.5);
  f.psi = {{1.0, 0.0}, {0.0, 2.0}, {1.0, 1.0}, {0.0, 0.0}};
  // dx = 0.5, sum |psi|^2 = 1 + 4 + 2 = 7  =>  norm = sqrt(3.5)
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(3.5)).epsilon(1e-15));
}

TEST_CASE("phase density norm and mass against the direct sums") {
  PhaseGrid g = make_phase_grid(0.0, 1.0, 2, 0.0, 1.0, 2);
  PhaseDensity d = make_phase_density(g);
  d.mu = {1.0, 2.0, 3.0, 4.0};
  // dy = deta = 0.5, cell weight 0.25
  CHECK(phase_mass(d) == doctest::Approx(0.25 * 10.0).epsilon(1e-15));
  CHECK(l2_norm(d) == doctest::Approx(std::sqrt(0.25 * 30.0)).epsilon(1e-15));
}

TEST_CASE("cyclic element access") {
  PhaseGrid g = make_phase_grid(0.0, 1.0, 2, 0.0, 1.0, 2);
  PhaseDensity d = make_phase_density(g);
  d.mu = {1.0, 2.0, 3.0, 4.0};
  CHECK(d.at(0, 0) == 1.0);
  CHECK(d.at(1, 1) == 4.0);
  CHECK(d.at(-1, 0) == 3.0);
  CHECK(d.at(0, -1) == 2.0);
  CHECK(d.at(2, 3) == 2.0);
}

TEST_CASE("grid-weighted norm matches the spectral sum") {
  // dx sum |psi_j|^2 == (b - a) / m^2 * sum |psihat_l|^2 for the
  // unnormalized transform.
  XGrid g = make_xgrid(-kPi, kPi, 32);
  WaveField f = make_wave_field(g, 0.1);
  for (int j = 0; j < g.m; ++j) {
    double x = g.point(j);
    f.psi[j] = std::complex<double>(std::sin(x), std::cos(2.0 * x));
  }
  auto hat = dft(f.psi);
  double spectral = 0.0;
  for (const auto& c : hat) spectral += std::norm(c);
  spectral *= g.length() / (static_cast<double>(g.m) * g.m);
  double direct = l2_norm(f) * l2_norm(f);
  CHECK(direct == doctest::Approx(spectral).epsilon(1e-12));
}
