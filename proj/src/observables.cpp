#include "gps/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gps {

namespace {

void require_matching(const BoundState& state, const CollocationGrid& grid) {
  if (static_cast<int>(state.psi_samples.size()) != grid.order - 1) {
    throw std::invalid_argument("observables: state was not computed on this grid");
  }
}

}  // namespace

Real expectation_r_power(const BoundState& state, const RadialMap& map,
                         const CollocationGrid& grid, int p, Diagnostics* diag) {
  if (p != -2 && p != -1 && p != 1 && p != 2) {
    throw std::invalid_argument("expectation_r_power: unsupported power " + std::to_string(p));
  }
  require_matching(state, grid);
  if (p == -2 && state.ell == 0) {
    warn(diag, "<r^-2> for an s state: the integrand does not vanish at r = 0 and the "
               "quadrature converges slowly");
  }
  Real sum = 0;
  for (std::size_t i = 0; i < state.psi_samples.size(); ++i) {
    const Real x = grid.nodes[i + 1];
    const Real r = state.r_samples[i];
    const Real psi = state.psi_samples[i];
    sum += grid.weights[i + 1] * map_derivatives(map, x).first * std::pow(r, Real(p)) * psi * psi;
  }
  return sum;
}

std::vector<Real> cumulative_norm(const BoundState& state, const RadialMap& map,
                                  const CollocationGrid& grid) {
  require_matching(state, grid);
  std::vector<Real> out;
  out.reserve(state.psi_samples.size());
  Real sum = 0;
  for (std::size_t i = 0; i < state.psi_samples.size(); ++i) {
    const Real x = grid.nodes[i + 1];
    const Real psi = state.psi_samples[i];
    sum += grid.weights[i + 1] * map_derivatives(map, x).first * psi * psi;
    out.push_back(sum);
  }
  return out;
}

namespace {

// psi at many points without re-scaling the node samples every call.
class PsiInterpolant {
 public:
  PsiInterpolant(const BoundState& state, const RadialMap& map, const CollocationGrid& grid)
      : map_(map), grid_(grid), f_(grid.size(), 0) {
    require_matching(state, grid);
    for (std::size_t i = 0; i < state.psi_samples.size(); ++i) {
      f_[i + 1] = std::sqrt(map_derivatives(map, grid.nodes[i + 1]).first) * state.psi_samples[i];
    }
  }

  Real operator()(Real r) const {
    if (r <= 0 || r >= map_.r_max()) return 0;
    const Real x = map_inverse(map_, r);
    return phi(x) / std::sqrt(map_derivatives(map_, x).first);
  }

  /// sqrt(r') psi as a function of x: a polynomial of degree N.
  Real phi(Real x) const { return interpolate(grid_, f_, x); }

 private:
  const RadialMap& map_;
  const CollocationGrid& grid_;
  std::vector<Real> f_;
};

Real cutoff_radius(const BoundState& state, const RadialMap& map, const CollocationGrid& grid) {
  const auto cum = cumulative_norm(state, map, grid);
  const Real total = cum.back();
  for (std::size_t i = 0; i < cum.size(); ++i) {
    if (cum[i] > total * (1 - 1e-8L)) return state.r_samples[i];
  }
  return state.r_samples.back();
}

}  // namespace

Real evaluate_psi(const BoundState& state, const RadialMap& map, const CollocationGrid& grid,
                  Real r) {
  return PsiInterpolant(state, map, grid)(r);
}

Real norm_within(const BoundState& state, const RadialMap& map, const CollocationGrid& grid,
                 Real r) {
  if (r <= 0) return 0;
  if (r >= map.r_max()) r = map.r_max();
  const PsiInterpolant psi(state, map, grid);
  // psi^2 dr = phi(x)^2 dx, a polynomial of degree 2N; the order N + 2 rule is exact.
  const auto& rule = cached_grid(grid.order + 2);
  const Real b = map_inverse(map, r);
  const Real half = (b + 1) / 2;
  Real sum = 0;
  for (int k = 0; k < rule.size(); ++k) {
    const Real v = psi.phi(-1 + half * (rule.nodes[k] + 1));
    sum += rule.weights[k] * v * v;
  }
  return half * sum;
}

DensityProfile radial_density(const BoundState& state, const RadialMap& map,
                              const CollocationGrid& grid, int output_points) {
  if (output_points < 2) throw std::invalid_argument("radial_density: need >= 2 points");
  const PsiInterpolant psi(state, map, grid);
  const Real r_cut = cutoff_radius(state, map, grid);
  DensityProfile out;
  out.r.resize(output_points);
  out.density.resize(output_points);
  for (int i = 0; i < output_points; ++i) {
    const Real r = r_cut * i / (output_points - 1);
    const Real v = psi(r);
    out.r[i] = r;
    out.density[i] = v * v;
  }
  return out;
}

DensityPeak locate_density_peak(const BoundState& state, const RadialMap& map,
                                const CollocationGrid& grid) {
  const PsiInterpolant psi(state, map, grid);
  const auto& r = state.r_samples;
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (std::abs(state.psi_samples[i]) > std::abs(state.psi_samples[best])) best = i;
  }
  Real lo = best == 0 ? Real(0) : r[best - 1];
  Real hi = best + 1 < r.size() ? r[best + 1] : map.r_max();
  const Real g = (std::sqrt(Real(5)) - 1) / 2;
  auto f = [&](Real x) {
    const Real v = psi(x);
    return v * v;
  };
  Real a = hi - g * (hi - lo);
  Real b = lo + g * (hi - lo);
  Real fa = f(a);
  Real fb = f(b);
  for (int it = 0; it < 200 && hi - lo > 1e-13L * std::max<Real>(1, hi); ++it) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + g * (hi - lo);
      fb = f(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - g * (hi - lo);
      fa = f(a);
    }
  }
  const Real at = (lo + hi) / 2;
  return {at, f(at)};
}

Real trapezoid(const std::vector<Real>& x, const std::vector<Real>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
  Real sum = 0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += (x[i] - x[i - 1]) * (y[i] + y[i - 1]) / 2;
  return sum;
}

int density_zeros(const BoundState& state, const RadialMap& map, const CollocationGrid& grid,
                  const DensityProfile& profile) {
  const PsiInterpolant psi(state, map, grid);
  std::vector<Real> values;
  values.reserve(profile.r.size());
  for (Real r : profile.r) values.push_back(psi(r));
  return count_nodes(values);
}

}  // namespace gps
