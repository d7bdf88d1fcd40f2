#pragma once

#include <Eigen/Core>

namespace gps {

// Near-threshold levels (|E| ~ 1e-4 .. 1e-7) need more than double precision
// in the assembled matrix and eigensolver to reach 1e-12 relative accuracy.
using Real = long double;

using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace gps
