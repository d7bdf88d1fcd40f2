#pragma once

#include <cmath>

#include "gps/real.hpp"

namespace test {

inline bool near(gps::Real a, gps::Real b, gps::Real tol) { return std::fabs(a - b) <= tol; }

inline bool near_rel(gps::Real a, gps::Real b, gps::Real tol) {
  return std::fabs(a - b) <= tol * std::fabs(b);
}

}  // namespace test
