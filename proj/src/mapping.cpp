#include "gps/mapping.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gps {

namespace {

void require_reference_point(Real x) {
  if (!(x >= -1 && x <= 1)) {
    throw std::invalid_argument("radial map: x = " + std::to_string(double(x)) +
                                " lies outside [-1, 1]");
  }
}

}  // namespace

RadialMap::RadialMap(Real r_max, Real alpha)
    : r_max_(r_max), alpha_(alpha), length_(alpha * r_max / 2) {
  if (!(r_max > 0) || !std::isfinite(r_max)) {
    throw std::invalid_argument("radial map: r_max must be positive and finite");
  }
  if (!(alpha > 0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("radial map: alpha must be positive and finite");
  }
}

Real map_r(const RadialMap& map, Real x) {
  require_reference_point(x);
  return map.length() * (1 + x) / (1 - x + map.alpha());
}

MapDerivatives map_derivatives(const RadialMap& map, Real x) {
  require_reference_point(x);
  const Real u = 1 - x + map.alpha();
  const Real c = map.length() * (2 + map.alpha());
  return {c / (u * u), 2 * c / (u * u * u), 6 * c / (u * u * u * u)};
}

Real map_inverse(const RadialMap& map, Real r) {
  if (!(r >= 0 && r <= map.r_max() * (1 + 1e-12L))) {
    throw std::invalid_argument("radial map: r outside [0, r_max]");
  }
  const Real l = map.length();
  const Real x = (r * (1 + map.alpha()) - l) / (l + r);
  return std::min<Real>(x, 1);
}

Real mapping_potential(const MapDerivatives& d) {
  const Real d1sq = d.first * d.first;
  return (3 * d.second * d.second - 2 * d.third * d.first) / (8 * d1sq * d1sq);
}

Real mapping_potential(const RadialMap& map, Real x) {
  return mapping_potential(map_derivatives(map, x));
}

}  // namespace gps
