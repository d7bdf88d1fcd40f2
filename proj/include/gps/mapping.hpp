#pragma once

#include "gps/real.hpp"

namespace gps {

/// Algebraic map r(x) = L (1 + x) / (1 - x + alpha) from [-1, 1] onto
/// [0, r_max], with L = alpha * r_max / 2.
class RadialMap {
 public:
  RadialMap(Real r_max, Real alpha);

  Real r_max() const { return r_max_; }
  Real alpha() const { return alpha_; }
  Real length() const { return length_; }

 private:
  Real r_max_;
  Real alpha_;
  Real length_;
};

struct MapDerivatives {
  Real first;
  Real second;
  Real third;
};

Real map_r(const RadialMap& map, Real x);
MapDerivatives map_derivatives(const RadialMap& map, Real x);

/// x(r) in closed form; r must lie in [0, r_max].
Real map_inverse(const RadialMap& map, Real r);

/// v_m = [3 r''^2 - 2 r''' r'] / [8 r'^4] for an arbitrary map.
Real mapping_potential(const MapDerivatives& d);
Real mapping_potential(const RadialMap& map, Real x);

}  // namespace gps
