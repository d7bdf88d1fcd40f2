#pragma once

#include <string>
#include <string_view>

#include "gps/real.hpp"

namespace gps {

enum class Family { Hulthen, Yukawa, Coulomb };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

/// A screened Coulomb potential: charge Z and screening parameter
/// (delta for Hulthen, lambda for Yukawa, zero for Coulomb).
struct PotentialSpec {
  Family family = Family::Coulomb;
  Real charge = 1;
  Real screening = 0;

  /// Throws std::invalid_argument on a negative screening, non-positive
  /// charge, or a Coulomb spec with nonzero screening.
  void validate() const;
};

struct ChannelSpec {
  PotentialSpec potential;
  int ell = 0;

  void validate() const;
};

/// v(r) for r > 0.
Real evaluate(const PotentialSpec& potential, Real r);

/// l(l+1)/(2r^2) + v(r).
Real effective_potential(const ChannelSpec& channel, Real r);

/// E(Z, s) = Z^2 E(1, s/Z).
Real scale_energy(Real energy_z1, Real charge);

/// The charge-one potential equivalent to `potential` under r -> r/Z.
PotentialSpec unit_charge_equivalent(const PotentialSpec& potential);

}  // namespace gps
