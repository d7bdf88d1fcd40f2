#include "gps/potentials.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gps {

std::string_view family_name(Family family) {
  switch (family) {
    case Family::Hulthen: return "hulthen";
    case Family::Yukawa: return "yukawa";
    case Family::Coulomb: return "coulomb";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "hulthen") return Family::Hulthen;
  if (name == "yukawa") return Family::Yukawa;
  if (name == "coulomb") return Family::Coulomb;
  throw std::invalid_argument("unknown potential family '" + std::string(name) + "'");
}

void PotentialSpec::validate() const {
  if (!(charge > 0) || !std::isfinite(charge)) {
    throw std::invalid_argument("potential: charge must be positive");
  }
  if (!(screening >= 0) || !std::isfinite(screening)) {
    throw std::invalid_argument("potential: screening must be non-negative");
  }
  if (family == Family::Coulomb && screening != 0) {
    throw std::invalid_argument("potential: Coulomb takes no screening parameter");
  }
}

void ChannelSpec::validate() const {
  potential.validate();
  if (ell < 0) throw std::invalid_argument("channel: ell must be >= 0");
}

Real evaluate(const PotentialSpec& potential, Real r) {
  if (!(r > 0)) {
    throw std::invalid_argument("potential: r must be positive, got " +
                                std::to_string(double(r)));
  }
  const Real z = potential.charge;
  const Real s = potential.screening;
  switch (potential.family) {
    case Family::Coulomb:
      return -z / r;
    case Family::Yukawa:
      return -z * std::exp(-s * r) / r;
    case Family::Hulthen: {
      const Real t = s * r;
      if (t < 1e-6L) {
        // delta / (e^t - 1) = (1/r) / (1 + t/2 + t^2/6 + ...) to O(t^3)
        return -z / (r * (1 + t / 2 + t * t / 6));
      }
      return -z * s / std::expm1(t);
    }
  }
  throw std::logic_error("unhandled potential family");
}

Real effective_potential(const ChannelSpec& channel, Real r) {
  const Real v = evaluate(channel.potential, r);
  const Real l = channel.ell;
  return l * (l + 1) / (2 * r * r) + v;
}

Real scale_energy(Real energy_z1, Real charge) {
  if (!(charge > 0)) throw std::invalid_argument("scale_energy: charge must be positive");
  return charge * charge * energy_z1;
}

PotentialSpec unit_charge_equivalent(const PotentialSpec& potential) {
  potential.validate();
  return {potential.family, 1, potential.screening / potential.charge};
}

}  // namespace gps
