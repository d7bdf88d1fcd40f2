#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

#include "gps/analysis.hpp"
#include "support.hpp"

using gps::Family;
using gps::Real;
using test::near;
using test::near_rel;

namespace {

using boost::multiprecision::cpp_int;

// Truncation by integer arithmetic. A finite long double is m * 2^e exactly,
// so |v| * 10^k = m * 10^k * 2^e and its integer part is an exact division.
std::string oracle_truncate(Real value, int digits) {
  int e2 = 0;
  const Real frac = std::frexp(std::fabs(value), &e2);
  const cpp_int mant = static_cast<cpp_int>(static_cast<unsigned long long>(std::ldexp(frac, 64)));
  const int shift = e2 - 64;  // |v| = mant * 2^shift
  auto scaled = [&](int k) {  // floor(|v| * 10^k), k >= 0
    cpp_int num = mant * boost::multiprecision::pow(cpp_int(10), k);
    if (shift >= 0) return cpp_int(num << shift);
    return cpp_int(num >> -shift);
  };
  // smallest number of places exposing `digits` significant figures
  int places = 0;
  while (true) {
    const cpp_int s = scaled(places);
    if (s != 0 && s >= boost::multiprecision::pow(cpp_int(10), digits - 1)) break;
    ++places;
  }
  std::string body = scaled(places).str();
  // integer parts longer than `digits` keep their magnitude with zeros
  for (std::size_t i = digits; i < body.size(); ++i) body[i] = '0';
  if (places > 0) {
    if (static_cast<int>(body.size()) <= places) body.insert(0, places + 1 - body.size(), '0');
    body.insert(body.size() - places, ".");
  }
  return (std::signbit(value) ? "-" : "") + body;
}

}  // namespace

TEST_CASE("exact Hulthen s levels") {
  CHECK(gps::hulthen_exact_s(1, 2) == 0);
  CHECK(near(gps::hulthen_exact_s(1, 0.002L), -0.4990005L, 1e-16L));
  CHECK(near(gps::hulthen_exact_s(2, 0.025L), -0.1128125L, 1e-16L));
  CHECK_THROWS_AS(gps::hulthen_exact_s(2, 0.6L), gps::NoBoundStateError);
}

TEST_CASE("critical screening formulas") {
  CHECK(near(gps::critical_screening_estimate(1, 0), 0.5L, 1e-18L));
  CHECK(near(gps::critical_screening_estimate(2, 0), 0.125L, 1e-18L));
  const Real d = 2 * std::sqrt(Real(2)) + 0.1645L + 0.0983L / 2;
  CHECK(near(gps::critical_screening_estimate(2, 1), 1 / (d * d), 1e-18L));
  CHECK(near(gps::critical_screening_estimate(2, 1), 0.1081L, 1e-4L));
  CHECK(gps::s_state_critical(1) == 2);
  CHECK(gps::s_state_critical(2) == 0.5L);
  CHECK(gps::s_state_critical(16) == 0.0078125L);
}

TEST_CASE("truncation examples") {
  CHECK(gps::truncate_digits(-0.123456789L, 5) == "-0.12345");
  CHECK(gps::truncate_digits(-0.99999L, 3) == "-0.999");
  CHECK(gps::truncate_digits(0.0001332288062L, 11) == "0.00013322880620");
  CHECK(gps::truncate_digits(-0.5L, 3) == "-0.500");
  CHECK(gps::truncate_digits(125.75L, 4) == "125.7");
  CHECK(gps::truncate_digits(1234567, 3) == "1230000");
  CHECK(gps::truncate_places(-0.00011249999999999L, 14) == "-0.00011249999999");
  CHECK(gps::truncate_places(3.999L, 0) == "3");
}

TEST_CASE("truncation agrees with integer arithmetic on a million random values") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> mantissa(1, 10);
  std::uniform_int_distribution<int> exponent(-12, 6);
  std::uniform_int_distribution<int> digits(1, 18);
  std::uniform_int_distribution<int> sign(0, 1);
  int mismatches = 0;
  for (int i = 0; i < 1000000; ++i) {
    const Real v = (sign(rng) ? -1 : 1) * Real(mantissa(rng)) * std::pow(Real(10), exponent(rng));
    const int d = digits(rng);
    if (gps::truncate_digits(v, d) != oracle_truncate(v, d) && ++mismatches <= 5) {
      MESSAGE(std::to_string(double(v)) << " digits " << d << ": " << gps::truncate_digits(v, d)
                                        << " vs " << oracle_truncate(v, d));
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("stable digits counts shared decimal places") {
  CHECK(gps::stable_digits(-0.12345L, -0.12349L) == 4);
  CHECK(gps::stable_digits(-0.5L, -0.5L) == gps::kMaxStableDigits);
  CHECK(gps::stable_digits(-0.5L, 0.5L) == 0);
  CHECK(gps::stable_digits(-1.5L, -0.5L) == 0);
  CHECK(gps::stable_digits(-0.000112499999991L, -0.000112499999998L) == 14);
}

TEST_CASE("convergence scan for a tightly bound level") {
  const auto report =
      gps::converge_r_max({Family::Coulomb, 1, 0}, {{1, 0}}, {60, 100, 150}, 12);
  CHECK(report.converged[0]);
  CHECK(report.stable_digits[0] >= 12);
  CHECK(near(report.recommended_energy[0], -0.5L, 1e-12L));
  CHECK(report.row_of(100) == 1);
  CHECK_THROWS(report.row_of(99));
}

TEST_CASE("convergence scan flags unbound states without failing") {
  const auto report =
      gps::converge_r_max({Family::Hulthen, 1, 0.6L}, {{1, 0}, {2, 0}}, {100, 200}, 10);
  CHECK(report.converged[0]);
  CHECK(!report.converged[1]);
  CHECK(std::isnan(report.energies[0][1]));
  CHECK(!report.recommended_r_max[1]);
}

TEST_CASE("convergence scan rejects a bad schedule") {
  CHECK_THROWS_AS(gps::converge_r_max({}, {{1, 0}}, {}, 10), std::invalid_argument);
  CHECK_THROWS_AS(gps::converge_r_max({}, {{1, 0}}, {200, 100}, 10), std::invalid_argument);
}

TEST_CASE("screening sweep tends to the Coulomb levels and drops unbound states") {
  const auto sweep = gps::sweep_screening(Family::Hulthen, 3, {1e-9L, 0.3L});
  for (int n = 1; n <= 3; ++n) {
    for (int ell = 0; ell < n; ++ell) {
      const auto e = sweep.energy(0, n, ell);
      REQUIRE(e);
      CHECK(near(*e, Real(-1) / (2 * n * n), 1e-8L));
    }
  }
  CHECK(sweep.energy(1, 1, 0));
  CHECK(!sweep.energy(1, 3, 0));
  for (const auto& level : sweep.levels[1]) CHECK(level.energy < 0);
}

TEST_CASE("s states appear and disappear at 2/n^2") {
  // Levels just below threshold are very diffuse; a large box with a gentle
  // map resolves them.
  const gps::SolverParams wide{400, 0.1L, 60000};
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    const Real critical = gps::s_state_critical(n);
    gps::Diagnostics diag;
    const auto below =
        gps::solve_channel({{Family::Hulthen, 1, critical * (1 - 1e-3L)}, 0}, wide, n, &diag);
    REQUIRE(below.states.size() == static_cast<std::size_t>(n));
    CHECK(below.states.back().node_check);
    CHECK(below.states.back().energy < -gps::kBoundThreshold);
    const auto above =
        gps::bound_energies({{Family::Hulthen, 1, critical * (1 + 1e-3L)}, 0}, wide, n);
    CHECK(above.size() == static_cast<std::size_t>(n - 1));
  }
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<int> hits(100, 0);
  gps::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}
