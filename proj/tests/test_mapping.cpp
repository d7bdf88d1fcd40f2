#include <doctest.h>

#include <stdexcept>

#include "gps/collocation.hpp"
#include "gps/mapping.hpp"
#include "support.hpp"

using gps::Real;
using test::near;

TEST_CASE("map endpoints and midpoint") {
  const gps::RadialMap unit(2, 1);  // L = 1
  CHECK(unit.length() == 1);
  CHECK(gps::map_r(unit, -1) == 0);
  CHECK(near(gps::map_r(unit, 0), 0.5L, 1e-18L));
  const gps::RadialMap wide(500, 25);
  CHECK(near(gps::map_r(wide, 1), 500, 500 * 1e-10L));
  CHECK(wide.length() == 6250);
}

TEST_CASE("map derivatives at L = alpha = 1, x = 0") {
  const gps::RadialMap unit(2, 1);
  const auto d = gps::map_derivatives(unit, 0);
  CHECK(near(d.first, 0.75L, 1e-18L));
  CHECK(near(d.second, 0.75L, 1e-18L));
  CHECK(near(d.third, 1.125L, 1e-18L));
}

TEST_CASE("central difference agrees with r''") {
  const gps::RadialMap unit(2, 1);
  const Real h = 1e-4L, x = 0.3L;
  const Real fd =
      (gps::map_r(unit, x + h) - 2 * gps::map_r(unit, x) + gps::map_r(unit, x - h)) / (h * h);
  CHECK(near(fd, gps::map_derivatives(unit, x).second, 1e-6L));
}

TEST_CASE("map is strictly increasing with positive derivative") {
  const gps::RadialMap m(800, 25);
  Real previous = -1;
  for (int i = 0; i <= 1000; ++i) {
    const Real x = -1 + Real(i) / 500;
    const Real r = gps::map_r(m, x);
    CHECK(r > previous);
    CHECK(gps::map_derivatives(m, x).first > 0);
    previous = r;
  }
}

TEST_CASE("inverse map round trip") {
  const gps::RadialMap m(500, 25);
  for (Real x : {-1.0L, -0.5L, 0.0L, 0.9L, 1.0L}) {
    CHECK(near(gps::map_inverse(m, gps::map_r(m, x)), x, 1e-15L));
  }
}

TEST_CASE("mapping potential vanishes for this map") {
  const gps::RadialMap unit(2, 1);
  CHECK(near(gps::mapping_potential(unit, 0), 0, 1e-18L));
  const auto g = gps::build_grid(200);
  for (auto [r_max, alpha] : {std::pair<Real, Real>{500, 25}, {100, 0.1L}, {5000, 3}}) {
    const gps::RadialMap m(r_max, alpha);
    for (Real x : g.nodes) CHECK(std::fabs(gps::mapping_potential(m, x)) <= 1e-12L);
  }
}

TEST_CASE("mapping potential of a cubic map matches the symbolic value") {
  // r(x) = (x + 1) + (x + 1)^3 at x = 0: r' = 4, r'' = 6, r''' = 6.
  CHECK(near(gps::mapping_potential(gps::MapDerivatives{4, 6, 6}), 15.0L / 512, 1e-18L));
}

TEST_CASE("invalid map arguments are rejected") {
  CHECK_THROWS_AS(gps::RadialMap(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(gps::RadialMap(10, -1), std::invalid_argument);
  const gps::RadialMap m(10, 1);
  CHECK_THROWS_AS(gps::map_r(m, 1.5L), std::invalid_argument);
  CHECK_THROWS_AS(gps::map_derivatives(m, -1.01L), std::invalid_argument);
}
