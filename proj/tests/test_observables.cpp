#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gps/observables.hpp"
#include "support.hpp"

using gps::Family;
using gps::Real;
using test::near;
using test::near_rel;

namespace {

struct Solved {
  gps::BoundState state;
  gps::RadialMap map;
  const gps::CollocationGrid& grid;
};

Solved solve(Family family, Real screening, int n, int ell, gps::SolverParams p = {}) {
  auto sol = gps::solve_channel({{family, 1, screening}, ell}, p, n);
  REQUIRE(!sol.states.empty());
  REQUIRE(sol.states.back().n == n);
  return {sol.states.back(), gps::RadialMap(p.r_max, p.alpha), gps::cached_grid(p.order)};
}

}  // namespace

TEST_CASE("hydrogen moments") {
  const auto s = solve(Family::Coulomb, 0, 1, 0);
  CHECK(near(gps::expectation_r_power(s.state, s.map, s.grid, 1), 1.5L, 1e-10L));
  CHECK(near(gps::expectation_r_power(s.state, s.map, s.grid, -1), 1, 1e-10L));
  CHECK(near(gps::expectation_r_power(s.state, s.map, s.grid, 2), 3, 1e-10L));
  const auto p = solve(Family::Coulomb, 0, 2, 1);
  CHECK(near(gps::expectation_r_power(p.state, p.map, p.grid, -2), 1.0L / 12, 1e-10L));
}

TEST_CASE("virial relation <1/r> = -2E for Coulomb states") {
  for (int ell = 0; ell < 4; ++ell) {
    const auto sol = gps::solve_channel({{Family::Coulomb, 1, 0}, ell}, {}, 6);
    const gps::RadialMap map(500, 25);
    for (const auto& s : sol.states) {
      CHECK(near(gps::expectation_r_power(s, map, gps::cached_grid(200), -1), -2 * s.energy,
                 1e-9L));
    }
  }
}

TEST_CASE("tabulated moments") {
  const auto y = solve(Family::Yukawa, 0.5L, 1, 0);
  CHECK(near(gps::expectation_r_power(y.state, y.map, y.grid, -1), 0.867533084978L, 1e-9L));
  CHECK(near(gps::expectation_r_power(y.state, y.map, y.grid, 1), 1.806554897095L, 1e-9L));
  const auto h = solve(Family::Hulthen, 0.1L, 1, 0);
  CHECK(near(gps::expectation_r_power(h.state, h.map, h.grid, -1), 0.998748957029L, 1e-9L));
  CHECK(near(gps::expectation_r_power(h.state, h.map, h.grid, 1), 1.502506265664L, 1e-9L));
}

TEST_CASE("unsupported powers and the s-state r^-2 warning") {
  const auto s = solve(Family::Coulomb, 0, 1, 0);
  CHECK_THROWS_AS(gps::expectation_r_power(s.state, s.map, s.grid, 0), std::invalid_argument);
  CHECK_THROWS_AS(gps::expectation_r_power(s.state, s.map, s.grid, 3), std::invalid_argument);
  gps::Diagnostics diag;
  gps::expectation_r_power(s.state, s.map, s.grid, -2, &diag);
  CHECK(diag.warnings.size() == 1);
}

TEST_CASE("cumulative norm") {
  const auto s = solve(Family::Coulomb, 0, 1, 0);
  const auto cum = gps::cumulative_norm(s.state, s.map, s.grid);
  CHECK(near(cum.back(), 1, 1e-10L));
  for (std::size_t i = 1; i < cum.size(); ++i) CHECK(cum[i] >= cum[i - 1]);
  // closed form of the integral of 4 r^2 exp(-2r) over [0, 5]
  CHECK(near(gps::norm_within(s.state, s.map, s.grid, 5), 0.997230604284488424056L, 1e-6L));
  CHECK(near(gps::norm_within(s.state, s.map, s.grid, 500), 1, 1e-10L));
  CHECK(gps::norm_within(s.state, s.map, s.grid, 0) == 0);
}

TEST_CASE("hydrogen density peaks at r = 1 and integrates to one") {
  const auto s = solve(Family::Coulomb, 0, 1, 0);
  const auto profile = gps::radial_density(s.state, s.map, s.grid, 2000);
  REQUIRE(profile.r.size() == 2000);
  CHECK(profile.r.front() == 0);
  for (Real d : profile.density) CHECK(d >= 0);
  CHECK(near(gps::trapezoid(profile.r, profile.density), 1, 1e-6L));
  const auto peak = gps::locate_density_peak(s.state, s.map, s.grid);
  CHECK(near(peak.r, 1, 1e-6L));
  CHECK(near(peak.height, 4 * std::exp(Real(-2)), 1e-10L));
  CHECK(near(gps::evaluate_psi(s.state, s.map, s.grid, 2.5L), 5 * std::exp(Real(-2.5)), 1e-10L));
}

TEST_CASE("radial_density needs two points") {
  const auto s = solve(Family::Coulomb, 0, 1, 0);
  CHECK_THROWS_AS(gps::radial_density(s.state, s.map, s.grid, 1), std::invalid_argument);
}

TEST_CASE("Yukawa s-state densities have n - 1 zeros") {
  for (int n : {2, 3, 4}) {
    const auto s = solve(Family::Yukawa, 0.01L, n, 0);
    const auto profile = gps::radial_density(s.state, s.map, s.grid, 4000);
    CHECK(gps::density_zeros(s.state, s.map, s.grid, profile) == n - 1);
    const Real area = gps::trapezoid(profile.r, profile.density);
    CHECK(area >= 0.999L);
    CHECK(area <= 1.001L);
  }
}

TEST_CASE("Yukawa ground-state density spreads out as screening grows") {
  Real last_r = 0, last_height = 1e9;
  for (Real lambda : {0.1L, 1.0L, 1.1L, 1.12L, 1.15L}) {
    const auto s = solve(Family::Yukawa, lambda, 1, 0, {200, 25, 500});
    const auto peak = gps::locate_density_peak(s.state, s.map, s.grid);
    CAPTURE(double(lambda));
    CHECK(peak.r > last_r);
    CHECK(peak.height < last_height);
    last_r = peak.r;
    last_height = peak.height;
  }
}

TEST_CASE("trapezoid rejects mismatched input") {
  CHECK_THROWS_AS(gps::trapezoid({0, 1}, {1}), std::invalid_argument);
  CHECK(near(gps::trapezoid({0, 1, 2}, {0, 1, 2}), 2, 1e-18L));
}
